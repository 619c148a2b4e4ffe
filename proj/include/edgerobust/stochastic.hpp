#pragma once

#include <cstdint>
#include <vector>

#include "edgerobust/instance.hpp"
#include "edgerobust/plan.hpp"
#include "edgerobust/solver/model.hpp"
#include "edgerobust/solver/solve.hpp"
#include "edgerobust/uncertainty.hpp"

namespace edgerobust {

struct ScenarioSet {
  std::vector<DemandScenario> scenarios;
  std::vector<double> probability;

  static ScenarioSet uniform(std::vector<DemandScenario> scenarios);
  int size() const { return static_cast<int>(scenarios.size()); }
  // Throws ConfigError unless probabilities are >= 0, sum to 1 within 1e-9 and
  // every scenario has `m_aps` entries.
  void validate(int m_aps) const;
};

// Training demand: λ = λ^f + g λ̂ with g ~ N(0, R)·(σ_i / λ̂_i), σ_i =
// sigma_ratio·λ̂_i and R equicorrelated with `correlation`. Draws outside D are
// rejected; after `max_rejections` consecutive rejections the draw is scaled
// back into D instead.
struct NormalSamplerParams {
  double sigma_ratio = 0.5;
  double correlation = 0.0;
  int max_rejections = 1000;
};

std::vector<DemandScenario> sample_normal_scenarios(const UncertaintySet& u, int count,
                                                    uint64_t seed,
                                                    const NormalSamplerParams& params = {});

// Shared first stage and one allocation block per scenario, weighted by its
// probability in the delay cost.
solver::MilpModel build_stochastic(const Instance& inst, const ScenarioSet& s);

struct StochasticOptions {
  double gap_tol = 1e-6;  // relative, for the decomposition
  int max_iter = 1000;
  // Scenario sets with at most this many allocation variables are solved as
  // one MILP; larger ones by the L-shaped decomposition.
  int extensive_limit = 3000;
  solver::MilpOptions milp;
};

struct StochasticResult {
  FirstStagePlan plan;
  double objective = 0.0;           // first-stage cost + expected delay cost
  double expected_delay_cost = 0.0;
  double lower_bound = 0.0;
  int iterations = 0;               // 1 for the extensive form
  bool decomposed = false;
  double seconds = 0.0;
};

// Throws ModelInfeasibleError when no plan serves every scenario.
StochasticResult solve_stochastic(const Instance& inst, const ScenarioSet& s,
                                  const StochasticOptions& options = {});

// Σ_ξ η^ξ β · (min delay at λ^ξ) for a fixed plan; +inf if some scenario has
// no feasible allocation.
double expected_delay_cost(const Instance& inst, const FirstStagePlan& plan, const ScenarioSet& s);

}  // namespace edgerobust
