#pragma once

#include <cstdint>
#include <vector>

#include "edgerobust/solver/model.hpp"

namespace edgerobust::solver {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kTimeLimit };

const char* to_string(SolveStatus status);

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  int max_iterations = 500000;
  bool scale = true;
};

// Duals are shadow prices d(objective)/d(rhs) in the model's own sense, so a
// binding `x >= 3` in `min x` has dual +1 and a binding `x + y <= 1` in
// `max x + y` has dual +1 as well. Reduced costs follow the same convention
// with respect to variable bounds.
struct LpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  int64_t iterations = 0;
};

struct MilpOptions {
  double gap_tol = 1e-9;       // relative
  double absolute_gap = 1e-9;  // absolute, in objective units
  double integrality_tol = 1e-6;
  double time_limit = 600.0;   // seconds
  int64_t node_limit = -1;
  LpOptions lp;
};

struct MilpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  double best_bound = 0.0;
  std::vector<double> values;
  int64_t nodes = 0;
  int64_t lp_iterations = 0;
  double seconds = 0.0;
  // True when the returned status is kTimeLimit but an incumbent exists.
  bool has_incumbent() const { return !values.empty(); }
};

// Bounded-variable primal simplex with a Bland's-rule fallback. Integrality
// flags are ignored. Throws SolverError on numerical breakdown.
LpSolution solve_lp(const MilpModel& model, const LpOptions& options = {});

// Best-bound branch and bound over LP relaxations, branching on the most
// fractional integer variable (ties broken by the lowest index). Throws
// TimeoutError if the time limit is hit without an incumbent.
MilpSolution solve_milp(const MilpModel& model, const MilpOptions& options = {});

}  // namespace edgerobust::solver
