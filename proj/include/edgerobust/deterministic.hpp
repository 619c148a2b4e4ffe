#pragma once

#include <cstdint>

#include "edgerobust/instance.hpp"
#include "edgerobust/plan.hpp"
#include "edgerobust/solver/model.hpp"
#include "edgerobust/solver/solve.hpp"
#include "edgerobust/uncertainty.hpp"

namespace edgerobust {

struct ModelResult {
  FirstStagePlan plan;
  Allocation allocation;
  double objective = 0.0;
  double delay_cost = 0.0;  // β · d^tot
  int64_t nodes = 0;
  double seconds = 0.0;
};

// Joint placement/sizing/allocation MILP at a fixed demand. Variables are
// ordered z (N), y_0, y_1..y_N, then x_{i,0}, x_{i,1..N} per AP.
solver::MilpModel build_deterministic(const Instance& inst, const DemandScenario& demand);

// Throws ModelInfeasibleError naming the constraint family ("budget",
// "delay", "r_min", "capacity") when no plan exists.
ModelResult solve_deterministic(const Instance& inst, const DemandScenario& demand,
                                const solver::MilpOptions& options = {});

}  // namespace edgerobust
