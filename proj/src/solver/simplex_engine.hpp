#pragma once

#include <cstdint>
#include <vector>

#include "edgerobust/solver/solve.hpp"

namespace edgerobust::solver::detail {

// min cost·x  s.t.  A x + s = rhs,  lower <= (x, s) <= upper.
// Structural variables are 0..cols-1, the slack of row r is cols + r.
struct StandardForm {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // rows x cols, row-major
  std::vector<double> rhs;
  std::vector<double> cost;   // cols
  std::vector<double> lower;  // cols + rows
  std::vector<double> upper;  // cols + rows
};

enum class VarState : uint8_t { kBasic, kAtLower, kAtUpper, kFree };

struct Basis {
  std::vector<int> basic;  // variable basic in each row
  std::vector<VarState> state;  // per variable
};

// Dense bounded-variable simplex on a condensed (Tucker) tableau: one row per
// basic variable, one column per nonbasic variable. Supports primal simplex
// (phase 1 by minimizing the sum of infeasibilities), dual simplex for
// re-optimization after bound changes, and basis save/restore.
class SimplexEngine {
 public:
  enum class Result { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

  SimplexEngine(StandardForm form, const LpOptions& options);

  Result solve_primal();
  // Dual simplex from the current (dual feasible) basis, followed by a primal
  // clean-up pass. Falls back to solve_primal() if dual feasibility is lost.
  Result reoptimize();

  void set_bounds(int var, double lower, double upper);
  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }

  int rows() const { return m_; }
  int cols() const { return n_; }
  double value(int var) const { return value_[var]; }
  double objective() const;
  bool is_basic(int var) const { return state_[var] == VarState::kBasic; }
  VarState state(int var) const { return state_[var]; }
  // Reduced cost of `var` with respect to the phase-2 costs (0 if basic).
  double reduced_cost(int var) const;
  // Shadow prices d(objective)/d(rhs_r).
  std::vector<double> row_duals() const;

  Basis basis() const;
  void load_basis(const Basis& basis);
  int64_t iterations() const { return iterations_; }

 private:
  enum class Rule { kDantzig, kBland };

  double& tab(int r, int k) { return t_[static_cast<size_t>(r) * n_ + k]; }
  double tab(int r, int k) const { return t_[static_cast<size_t>(r) * n_ + k]; }

  void reset_to_slack_basis();
  void place_nonbasic(int var, VarState preferred);
  void recompute_basic_values();
  void compute_reduced_costs(const std::vector<double>& costs);
  void pivot(int r, int s);
  void apply_step(int s, double delta);
  bool is_infeasible(int var) const;
  double infeasibility(int var) const;
  bool dual_feasible() const;

  Result primal_loop(bool phase_one);
  Result dual_loop();

  int m_;
  int n_;
  LpOptions opt_;
  StandardForm form_;
  std::vector<double> t_;     // m x n
  std::vector<double> rhs_;   // m
  std::vector<double> d_;     // n reduced costs of nonbasic columns
  std::vector<int> head_;     // m: basic variable per row
  std::vector<int> nonbasic_; // n: nonbasic variable per column
  std::vector<int> where_;    // per var: row if basic, column if nonbasic
  std::vector<VarState> state_;
  std::vector<double> value_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;  // per var, slacks zero
  int64_t iterations_ = 0;
  int64_t limit_ = 0;  // iteration count at which the current solve gives up
  int since_refresh_ = 0;
};

}  // namespace edgerobust::solver::detail
