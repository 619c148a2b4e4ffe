#include <gtest/gtest.h>

#include <cmath>

#include "edgerobust/aro_ccg.hpp"
#include "edgerobust/deterministic.hpp"
#include "edgerobust/error.hpp"
#include "edgerobust/evaluation.hpp"
#include "edgerobust/stochastic.hpp"
#include "support/oracles.hpp"

namespace edgerobust {
namespace {

TEST(ScenarioSet, Validation) {
  ScenarioSet s = ScenarioSet::uniform({{{1.0, 2.0}, {}}, {{2.0, 1.0}, {}}});
  EXPECT_NO_THROW(s.validate(2));
  EXPECT_THROW(s.validate(3), ConfigError);
  s.probability = {0.7, 0.7};
  EXPECT_THROW(s.validate(2), ConfigError);
  s.probability = {1.5, -0.5};
  EXPECT_THROW(s.validate(2), ConfigError);
}

TEST(Sampler, DrawsStayInsideTheSet) {
  const Instance inst = generate_instance(GeneratorParams{}, 1);
  const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 3.0);
  NormalSamplerParams p;
  p.correlation = 0.5;
  const auto draws = sample_normal_scenarios(u, 200, 5, p);
  ASSERT_EQ(draws.size(), 200u);
  for (const auto& d : draws) EXPECT_TRUE(u.contains(d));
  EXPECT_EQ(sample_normal_scenarios(u, 20, 5, p), sample_normal_scenarios(u, 20, 5, p));
}

TEST(Sampler, SpreadFollowsSigmaRatio) {
  const auto u = UncertaintySet::from_alpha(std::vector<double>(4, 1000.0), 0.3, 4.0);
  NormalSamplerParams p;
  p.sigma_ratio = 0.2;  // almost never truncated
  const auto draws = sample_normal_scenarios(u, 4000, 11, p);
  double sum = 0.0, sq = 0.0;
  for (const auto& d : draws) {
    sum += d.lambda[0];
    sq += d.lambda[0] * d.lambda[0];
  }
  const double mean = sum / draws.size();
  const double sd = std::sqrt(sq / draws.size() - mean * mean);
  EXPECT_NEAR(mean, 1000.0, 3.0);
  EXPECT_NEAR(sd, 0.2 * 300.0, 3.0);
}

TEST(Stochastic, SingleScenarioIsDeterministic) {
  const Instance inst = generate_instance(GeneratorParams{}, 2);
  const DemandScenario f{inst.forecast, {}};
  const double det = solve_deterministic(inst, f).objective;
  const StochasticResult r = solve_stochastic(inst, ScenarioSet::uniform({f}));
  EXPECT_NEAR(r.objective, det, 1e-6 * det);
}

TEST(Stochastic, DuplicatedScenariosMatchSingle) {
  const Instance inst = generate_instance(GeneratorParams{}, 2);
  const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 10.0);
  const DemandScenario s = sample_scenario(u, 4);
  const double one = solve_stochastic(inst, ScenarioSet::uniform({s})).objective;
  const double two = solve_stochastic(inst, ScenarioSet::uniform({s, s})).objective;
  EXPECT_NEAR(two, one, 1e-6 * one);
}

TEST(Stochastic, VariableCountPerScenario) {
  const Instance inst = oracle::small_instance(3, 2, 1);
  const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 1.0);
  const auto one = build_stochastic(inst, ScenarioSet::uniform(sample_scenarios(u, 1, 1)));
  const auto four = build_stochastic(inst, ScenarioSet::uniform(sample_scenarios(u, 4, 1)));
  EXPECT_EQ(four.num_variables() - one.num_variables(), 3 * 3 * 3);
}

TEST(Stochastic, DecompositionMatchesExtensiveForm) {
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    const Instance inst = generate_instance(GeneratorParams{}, seed);
    const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 10.0);
    const ScenarioSet s = ScenarioSet::uniform(sample_normal_scenarios(u, 8, seed));
    const StochasticResult ext = solve_stochastic(inst, s);
    StochasticOptions o;
    o.extensive_limit = 0;
    const StochasticResult dec = solve_stochastic(inst, s, o);
    EXPECT_FALSE(ext.decomposed);
    EXPECT_TRUE(dec.decomposed);
    EXPECT_NEAR(dec.objective, ext.objective, 2e-6 * ext.objective) << "seed " << seed;
  }
}

TEST(Stochastic, ObjectiveIsCostPlusExpectedDelay) {
  const Instance inst = generate_instance(GeneratorParams{}, 3);
  const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 10.0);
  const ScenarioSet s = ScenarioSet::uniform(sample_normal_scenarios(u, 30, 3));
  const StochasticResult r = solve_stochastic(inst, s);
  const double expected = expected_delay_cost(inst, r.plan, s);
  EXPECT_NEAR(r.objective, r.plan.cost() + expected, 1e-6 * r.objective);
  double worst = 0.0;
  for (const auto& d : s.scenarios) worst = std::max(worst, solve_inner(inst, sizing_of(r.plan), d.lambda).objective);
  EXPECT_LE(expected, worst + 1e-12);
}

TEST(Stochastic, ForecastScenariosGiveDeterministicPlanCost) {
  const Instance inst = generate_instance(GeneratorParams{}, 5);
  const DemandScenario f{inst.forecast, {}};
  const ModelResult det = solve_deterministic(inst, f);
  const StochasticResult r = solve_stochastic(inst, ScenarioSet::uniform({f, f, f}));
  EXPECT_NEAR(r.objective, det.objective, 1e-6 * det.objective);
}

class Operation : public ::testing::Test {
 protected:
  Instance inst = oracle::hand_instance();
  FirstStagePlan plan(double y0, double y1) const {
    return make_plan(inst, {y1 > 0 ? 1.0 : 0.0}, y0, {y1});
  }
};

TEST_F(Operation, NothingBoughtDropsEverything) {
  const OperationResult r = operation_stage(inst, plan(0, 0), {inst.forecast, {}}, 40.0);
  EXPECT_NEAR(r.drop_ratio, 1.0, 1e-12);
  EXPECT_NEAR(r.realized_cost, 40.0, 1e-9);
}

TEST_F(Operation, AmpleCapacityServesEverything) {
  const OperationResult r = operation_stage(inst, plan(50, 50), {inst.forecast, {}}, 40.0);
  EXPECT_NEAR(r.drop_ratio, 0.0, 1e-12);
  EXPECT_NEAR(r.delay_cost, 0.01 * 5.0 * 10.0, 1e-9);
  EXPECT_NEAR(r.allocation.to_edge[0][0], 10.0, 1e-9);
}

TEST_F(Operation, OnePercentDropCostsPointFour) {
  const OperationResult r = operation_stage(inst, plan(0, 9.9), {inst.forecast, {}}, 40.0);
  EXPECT_NEAR(r.drop_ratio, 0.01, 1e-9);
  EXPECT_NEAR(r.realized_cost, 0.01 * 5.0 * 9.9 + 0.4, 1e-9);
}

TEST_F(Operation, DelayCapAppliesToServedRequestsOnly) {
  // Cloud only: 80 ms exceeds the 30 ms cap, so nothing can be served.
  const OperationResult r = operation_stage(inst, plan(50, 0), {inst.forecast, {}}, 40.0);
  EXPECT_NEAR(r.drop_ratio, 1.0, 1e-9);
}

TEST(OperationLp, MatchesInnerLpWhenCapacitySuffices) {
  const Instance inst = generate_instance(GeneratorParams{}, 1);
  const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 10.0);
  const CcgResult aro = ccg_solve(inst, u);
  for (const auto& d : sample_scenarios(u, 10, 1)) {
    const OperationResult op = operation_stage(inst, aro.plan, d, 40.0);
    const InnerResult in = solve_inner(inst, sizing_of(aro.plan), d.lambda);
    EXPECT_NEAR(op.drop_ratio, 0.0, 1e-9);
    EXPECT_NEAR(op.realized_cost, in.objective, 1e-9 * in.objective);
  }
}

TEST(Comparison, PairedScenariosAndTotals) {
  const Instance inst = generate_instance(GeneratorParams{}, 1);
  const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 10.0);
  const ModelResult det = solve_deterministic(inst, u.nominal());
  const std::vector<MethodPlan> plans = {{"det", det.plan, det.objective},
                                         {"det_copy", det.plan, det.objective}};
  const ComparisonReport rep = evaluate_methods(inst, u, plans, 25, 40.0, 3);
  const MethodReport& a = rep.at("det");
  const MethodReport& b = rep.at("det_copy");
  EXPECT_EQ(a.realized_total, b.realized_total);
  EXPECT_NEAR(a.total_average, a.first_stage_cost + a.mean_second_stage, 1e-12);
  EXPECT_NEAR(a.total_worst, a.first_stage_cost + a.worst_second_stage, 1e-12);
  EXPECT_THROW(rep.at("missing"), ConfigError);
  const std::string csv = report_to_csv(rep);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,metric,value");
  EXPECT_THROW(evaluate_methods(inst, u, plans, 0, 40.0, 3), ConfigError);
}

}  // namespace
}  // namespace edgerobust
