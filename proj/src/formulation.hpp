#pragma once

// Building blocks shared by the deterministic, robust, master and stochastic
// models: the first-stage feasible set S(Y,Z) and one allocation block.

#include <string>
#include <vector>

#include "edgerobust/error.hpp"
#include "edgerobust/instance.hpp"
#include "edgerobust/plan.hpp"
#include "edgerobust/solver/model.hpp"
#include "edgerobust/solver/solve.hpp"

namespace edgerobust::detail {

// Constraint families that can be switched off to diagnose infeasibility.
struct BuildFlags {
  bool budget = true;
  bool delay_cap = true;
  bool r_min = true;
};

struct FirstStageVars {
  std::vector<int> z;
  int y0 = -1;
  std::vector<int> y;
};

struct AllocationVars {
  std::vector<int> x0;
  std::vector<std::vector<int>> x;
  int delay_row = -1;
};

// Adds z, y0, y (in that order) with objective Σh_j z_j + p_0 y_0 + Σp_j y_j,
// plus r_min, budget and y_j <= C_j z_j.
FirstStageVars add_first_stage(solver::MilpModel& m, const Instance& inst,
                               const BuildFlags& flags);

// Adds x_{i,0}, x_{i,j} with objective weight `delay_weight` per request·ms,
// flow rows x_{i,0} + Σ_j x_{i,j} (relation) λ_i, capacity rows against the
// shared sizing and the delay cap Σ d x <= delay_rhs.
AllocationVars add_allocation(solver::MilpModel& m, const Instance& inst,
                              const FirstStageVars& fs, const std::vector<double>& lambda,
                              solver::Relation flow, double delay_weight, double delay_rhs,
                              const std::string& tag, const BuildFlags& flags);

// Σ_i d_{i,0} x_{i,0} + Σ_{i,j} d_{i,j} x_{i,j} as model terms.
std::vector<solver::Term> delay_terms(const Instance& inst, const AllocationVars& a,
                                      double scale = 1.0);

FirstStagePlan read_plan(const Instance& inst, const FirstStageVars& fs,
                         const std::vector<double>& values);
Allocation read_allocation(const Instance& inst, const AllocationVars& a,
                           const std::vector<double>& values, double demand_total);

// Re-solves with constraint families relaxed one at a time and returns the
// first family whose removal restores feasibility ("budget", "delay",
// "r_min"), or "capacity" when none does.
template <typename Build>
std::string diagnose_infeasibility(Build build, const solver::MilpOptions& options) {
  const char* names[] = {"budget", "delay", "r_min"};
  for (int k = 0; k < 3; ++k) {
    BuildFlags flags;
    if (k == 0) flags.budget = false;
    if (k == 1) flags.delay_cap = false;
    if (k == 2) flags.r_min = false;
    solver::MilpModel m = build(flags);
    try {
      if (solver::solve_milp(m, options).status != solver::SolveStatus::kInfeasible) return names[k];
    } catch (const Error&) {
    }
  }
  return "capacity";
}

}  // namespace edgerobust::detail
