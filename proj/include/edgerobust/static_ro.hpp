#pragma once

#include <vector>

#include "edgerobust/deterministic.hpp"
#include "edgerobust/instance.hpp"
#include "edgerobust/solver/model.hpp"
#include "edgerobust/solver/solve.hpp"
#include "edgerobust/uncertainty.hpp"

namespace edgerobust {

// Duals of min{Σ g_i λ̂_i : (g, t) in the budget set} and the (g, t) block
// itself, as they appear in the robust counterpart.
struct RoDualBlock {
  double u = 0.0;
  std::vector<double> v, gamma, mu, sigma;
  std::vector<double> g, t;
};

struct StaticRoResult : ModelResult {
  RoDualBlock duals;
  // D^m Σλ^f − D^m (uΓ + Σμ + Σσ) at the optimum.
  double delay_rhs = 0.0;
};

// Single-stage robust counterpart: per-AP covering of the worst demand
// λ^f + min{1,Γ} λ̂, and the delay cap against min_{λ∈D} Σλ embedded through
// LP duality with the (g, t) block and a linking equality.
solver::MilpModel build_static_ro(const Instance& inst, const UncertaintySet& u);

StaticRoResult solve_static_ro(const Instance& inst, const UncertaintySet& u,
                               const solver::MilpOptions& options = {});

}  // namespace edgerobust
