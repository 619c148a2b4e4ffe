#include <gtest/gtest.h>

#include <algorithm>

#include "edgerobust/deterministic.hpp"
#include "edgerobust/error.hpp"
#include "edgerobust/static_ro.hpp"
#include "support/oracles.hpp"

namespace edgerobust {
namespace {

DemandScenario demand_of(std::vector<double> lambda) { return {std::move(lambda), {}}; }

double recomputed_objective(const Instance& inst, const ModelResult& r) {
  return r.plan.cost() + inst.beta * r.allocation.total_delay;
}

TEST(Deterministic, HandExample) {
  const Instance inst = oracle::hand_instance();
  const ModelResult r = solve_deterministic(inst, demand_of(inst.forecast));
  EXPECT_NEAR(r.objective, 1.3, 1e-9);
  EXPECT_EQ(r.plan.placement[0], 1);
  EXPECT_NEAR(r.plan.size_edge[0], 10.0, 1e-9);
  EXPECT_NEAR(r.plan.size_cloud, 0.0, 1e-9);
  EXPECT_NEAR(r.allocation.to_edge[0][0], 10.0, 1e-9);
  EXPECT_NEAR(r.delay_cost, 0.5, 1e-9);
}

TEST(Deterministic, VariableCount) {
  const Instance inst = oracle::small_instance(4, 3, 1);
  const auto m = build_deterministic(inst, demand_of(inst.forecast));
  EXPECT_EQ(m.num_variables(), 3 + 4 + 4 * 4);
  EXPECT_EQ(m.num_integers(), 3);
}

TEST(Deterministic, FreeDelayAndCheapCloudRoutesToCloud) {
  Instance inst = oracle::hand_instance();
  inst.beta = 0.0;
  inst.r_min = 0;
  inst.delay_cap = 100.0;
  const ModelResult r = solve_deterministic(inst, demand_of(inst.forecast));
  EXPECT_NEAR(r.allocation.to_cloud[0], 10.0, 1e-9);
  EXPECT_EQ(r.plan.placement[0], 0);
  EXPECT_NEAR(r.objective, 0.3, 1e-9);
}

TEST(Deterministic, ZeroDemandCostsCheapestPlacement) {
  const Instance inst = generate_instance(GeneratorParams{}, 2);
  const ModelResult r = solve_deterministic(inst, demand_of(std::vector<double>(inst.m_aps, 0.0)));
  std::vector<double> h;
  for (int j = 0; j < inst.n_ens; ++j) h.push_back(inst.placement_weight(j));
  std::sort(h.begin(), h.end());
  double cheapest = 0.0;
  for (int k = 0; k < inst.r_min; ++k) cheapest += h[k];
  EXPECT_NEAR(r.objective, cheapest, 1e-9);
  EXPECT_NEAR(r.plan.total_size(), 0.0, 1e-9);
}

TEST(Deterministic, ObjectiveMatchesRecomputedCosts) {
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    const Instance inst = generate_instance(GeneratorParams{}, seed);
    const ModelResult r = solve_deterministic(inst, demand_of(inst.forecast));
    EXPECT_NEAR(r.objective, recomputed_objective(inst, r), 1e-6);
    EXPECT_NO_THROW(check_plan(inst, r.plan));
    EXPECT_LE(r.allocation.avg_delay, inst.delay_cap + 1e-6);
    for (int i = 0; i < inst.m_aps; ++i) EXPECT_NEAR(r.allocation.served(i), inst.forecast[i], 1e-6);
  }
}

TEST(Deterministic, NonDecreasingInBeta) {
  Instance inst = generate_instance(GeneratorParams{}, 3);
  const double base = solve_deterministic(inst, demand_of(inst.forecast)).objective;
  inst.beta *= 2.0;
  EXPECT_GE(solve_deterministic(inst, demand_of(inst.forecast)).objective, base - 1e-9);
}

TEST(Deterministic, InfeasibleBudgetIsNamed) {
  Instance inst = generate_instance(GeneratorParams{}, 1);
  inst.budget = 0.01;
  try {
    solve_deterministic(inst, demand_of(inst.forecast));
    FAIL() << "expected ModelInfeasibleError";
  } catch (const ModelInfeasibleError& e) {
    EXPECT_EQ(e.constraint_class(), "budget");
  }
}

TEST(Deterministic, UnreachableDelayCapIsNamed) {
  Instance inst = oracle::hand_instance();
  inst.delay_cap = 1.0;
  try {
    solve_deterministic(inst, demand_of(inst.forecast));
    FAIL() << "expected ModelInfeasibleError";
  } catch (const ModelInfeasibleError& e) {
    EXPECT_EQ(e.constraint_class(), "delay");
  }
}

class StaticRo : public ::testing::Test {
 protected:
  Instance inst = generate_instance(GeneratorParams{}, 1);
};

TEST_F(StaticRo, ZeroBudgetEqualsDeterministic) {
  const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 0.0);
  const double det = solve_deterministic(inst, u.nominal()).objective;
  EXPECT_NEAR(solve_static_ro(inst, u).objective, det, 1e-6 * det);
}

TEST_F(StaticRo, ZeroDeviationEqualsDeterministic) {
  const auto u = UncertaintySet::from_alpha(inst.forecast, 0.0, 10.0);
  const double det = solve_deterministic(inst, u.nominal()).objective;
  EXPECT_NEAR(solve_static_ro(inst, u).objective, det, 1e-6 * det);
}

TEST_F(StaticRo, DelayRhsIsMinimumTotalDemand) {
  for (double gamma : {0.0, 2.5, 10.0}) {
    const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, gamma);
    const StaticRoResult r = solve_static_ro(inst, u);
    const double expect = inst.delay_cap * u.min_total_demand();
    EXPECT_NEAR(r.delay_rhs, expect, 1e-6 * expect) << "gamma " << gamma;
  }
}

TEST_F(StaticRo, NonDecreasingInGammaAndAboveDeterministic) {
  const double det = solve_deterministic(inst, DemandScenario{inst.forecast, {}}).objective;
  double prev = det;
  for (double gamma : {0.0, 5.0, 10.0, 20.0}) {
    const double obj = solve_static_ro(inst, UncertaintySet::from_alpha(inst.forecast, 0.3, gamma)).objective;
    EXPECT_GE(obj, prev - 1e-6 * prev) << "gamma " << gamma;
    prev = obj;
  }
}

TEST(StaticRoSmall, AllocationCoversEveryVertex) {
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    const Instance inst = oracle::small_instance(4, 2, seed);
    const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 2.0);
    StaticRoResult r;
    try {
      r = solve_static_ro(inst, u);
    } catch (const ModelInfeasibleError&) {
      continue;
    }
    for (const auto& v : enumerate_extreme_points(u)) {
      for (int i = 0; i < inst.m_aps; ++i) EXPECT_GE(r.allocation.served(i), v.lambda[i] - 1e-6);
    }
    EXPECT_NEAR(r.objective, recomputed_objective(inst, r), 1e-6);
  }
}

TEST(StaticRoSmall, CoveringRhsUsesMinOfOneAndGamma) {
  const Instance inst = oracle::small_instance(3, 2, 5);
  for (double gamma : {0.5, 1.0, 2.0}) {
    const auto u = UncertaintySet::from_alpha(inst.forecast, 0.2, gamma);
    const auto m = build_static_ro(inst, u);
    int found = 0;
    for (const auto& c : m.constraints()) {
      if (c.name.rfind("flow_", 0) != 0) continue;
      const int i = std::stoi(c.name.substr(5));
      EXPECT_NEAR(c.rhs, inst.forecast[i] + std::min(1.0, gamma) * u.deviation[i], 1e-9);
      ++found;
    }
    EXPECT_EQ(found, inst.m_aps);
  }
}

}  // namespace
}  // namespace edgerobust
