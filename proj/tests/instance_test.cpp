#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "edgerobust/error.hpp"
#include "edgerobust/instance.hpp"
#include "edgerobust/uncertainty.hpp"

namespace edgerobust {
namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("edgerobust_" + name)).string();
}

TEST(Generator, DeterministicGivenSeed) {
  const Instance a = generate_instance(GeneratorParams{}, 7);
  const Instance b = generate_instance(GeneratorParams{}, 7);
  EXPECT_EQ(a, b);
  EXPECT_EQ(instance_to_json(a), instance_to_json(b));
  EXPECT_NE(a, generate_instance(GeneratorParams{}, 8));
}

TEST(Generator, BaseCaseShape) {
  const Instance inst = generate_instance(GeneratorParams{}, 1);
  EXPECT_EQ(inst.m_aps, 20);
  EXPECT_EQ(inst.n_ens, 5);
  EXPECT_EQ(inst.r_min, 2);
  EXPECT_DOUBLE_EQ(inst.delay_cap, 30.0);
  for (double d : inst.delay_cloud) EXPECT_DOUBLE_EQ(d, 80.0);
  for (double f : inst.forecast) {
    EXPECT_GE(f, 1000.0);
    EXPECT_LE(f, 4000.0);
  }
  for (double f : inst.install_cost) {
    EXPECT_GE(f, 0.2);
    EXPECT_LE(f, 0.25);
  }
  EXPECT_NEAR(inst.beta * inst.total_forecast(), 0.01, 1e-15);
  EXPECT_NO_THROW(inst.validate());
}

TEST(Generator, DemandScaleMultipliesForecast) {
  GeneratorParams p;
  const Instance a = generate_instance(p, 3);
  p.demand_scale = 2.0;
  const Instance b = generate_instance(p, 3);
  for (int i = 0; i < a.m_aps; ++i) EXPECT_DOUBLE_EQ(b.forecast[i], 2.0 * a.forecast[i]);
}

TEST(Generator, RejectsBadParameters) {
  GeneratorParams p;
  p.n_ens = 200;
  EXPECT_THROW(generate_instance(p, 1), ConfigError);
  p = GeneratorParams{};
  p.demand_min = 5000.0;
  EXPECT_THROW(generate_instance(p, 1), ConfigError);
  p = GeneratorParams{};
  p.link_delay_min = 6.0;
  EXPECT_THROW(generate_instance(p, 1), ConfigError);
}

TEST(Topology, BarabasiAlbertEdgeCount) {
  const Topology t = generate_topology(100, 2, 2.0, 5.0, 11);
  // clique on 3 seed nodes, then 2 links per added node
  EXPECT_EQ(t.links.size(), 3u + 2u * 97u);
  std::set<std::pair<int, int>> seen;
  for (const auto& l : t.links) {
    EXPECT_NE(l.u, l.v);
    EXPECT_GE(l.delay, 2.0);
    EXPECT_LE(l.delay, 5.0);
    EXPECT_TRUE(seen.insert({std::min(l.u, l.v), std::max(l.u, l.v)}).second);
  }
}

TEST(Topology, ShortestPathsSatisfyTriangleInequality) {
  const Topology t = generate_topology(40, 2, 2.0, 5.0, 5);
  std::vector<std::vector<double>> d;
  for (int s = 0; s < t.n_nodes; ++s) d.push_back(shortest_delays(t, s));
  for (int a = 0; a < t.n_nodes; ++a) {
    EXPECT_DOUBLE_EQ(d[a][a], 0.0);
    for (int b = 0; b < t.n_nodes; ++b) {
      EXPECT_NEAR(d[a][b], d[b][a], 1e-12);
      for (int c = 0; c < t.n_nodes; ++c) EXPECT_LE(d[a][c], d[a][b] + d[b][c] + 1e-12);
    }
  }
}

TEST(EffectiveInstallCost, MinOverInitialPeers) {
  const std::vector<double> f0 = {5.0, 6.0, 7.0};
  const std::vector<std::vector<double>> peer = {{10, 3, 4}, {2, 10, 9}, {3.5, 1, 10}};
  // ENs 1 and 2 are initially placed, so EN 0 copies from {3, 4}.
  const auto f = effective_install_cost(f0, peer, {0, 1, 1});
  EXPECT_DOUBLE_EQ(f[0], 3.0);
  EXPECT_DOUBLE_EQ(f[1], 6.0);
  EXPECT_DOUBLE_EQ(f[2], 1.0);
  const auto none = effective_install_cost(f0, peer, {0, 0, 0});
  EXPECT_EQ(none, f0);
}

TEST(EffectiveInstallCost, InitialPlacementZeroesWeight) {
  Instance inst = generate_instance(GeneratorParams{}, 1);
  inst.initial_placement[0] = 1;
  EXPECT_DOUBLE_EQ(inst.placement_weight(0), inst.storage_cost[0]);
}

TEST(Json, RoundTrip) {
  const Instance inst = generate_instance(GeneratorParams{}, 4);
  EXPECT_EQ(instance_from_json(instance_to_json(inst)), inst);
  const std::string path = temp_path("roundtrip.json");
  save_instance(inst, path);
  EXPECT_EQ(load_instance(path), inst);
  std::remove(path.c_str());
}

TEST(Json, MissingFieldIsNamed) {
  auto j = nlohmann::json::parse(instance_to_json(generate_instance(GeneratorParams{}, 4)));
  j.erase("budget");
  try {
    instance_from_json(j.dump());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("budget"), std::string::npos);
  }
}

TEST(Json, UnknownFieldRejected) {
  auto j = nlohmann::json::parse(instance_to_json(generate_instance(GeneratorParams{}, 4)));
  j["colour"] = "blue";
  EXPECT_THROW(instance_from_json(j.dump()), ParseError);
}

TEST(Json, MalformedTextRejected) {
  EXPECT_THROW(instance_from_json("{\"schema_version\": 1,"), ParseError);
  EXPECT_THROW(load_instance(temp_path("does_not_exist.json")), Error);
}

TEST(Uncertainty, SamplesAreMembers) {
  const Instance inst = generate_instance(GeneratorParams{}, 2);
  const auto u = UncertaintySet::from_alpha(inst.forecast, 0.3, 10.0);
  const auto samples = sample_scenarios(u, 100, 42);
  std::set<std::vector<double>> distinct;
  for (const auto& s : samples) {
    EXPECT_TRUE(u.contains(s, 1e-9));
    double sum = 0.0;
    for (double g : s.g) sum += std::abs(g);
    EXPECT_LE(sum, 10.0 + 1e-9);
    distinct.insert(s.lambda);
  }
  EXPECT_EQ(distinct.size(), 100u);
}

TEST(Uncertainty, ZeroBudgetSamplesForecast) {
  const auto u = UncertaintySet::from_alpha({10, 20, 30}, 0.3, 0.0);
  for (uint64_t s = 0; s < 5; ++s) EXPECT_EQ(sample_scenario(u, s).lambda, u.forecast);
}

TEST(Uncertainty, ExtremePointCounts) {
  const auto u2 = UncertaintySet::from_alpha({10, 20}, 0.5, 1.0);
  const auto v2 = enumerate_extreme_points(u2);
  ASSERT_EQ(v2.size(), 4u);
  std::set<std::vector<double>> gs;
  for (const auto& v : v2) gs.insert(v.g);
  EXPECT_EQ(gs, (std::set<std::vector<double>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}));

  const auto u3 = UncertaintySet::from_alpha({10, 20, 30}, 0.5, 3.0);
  const auto v3 = enumerate_extreme_points(u3);
  EXPECT_EQ(v3.size(), 8u);
  for (const auto& v : v3) {
    for (double g : v.g) EXPECT_EQ(std::abs(g), 1.0);
  }

  const auto u0 = UncertaintySet::from_alpha({10, 20, 30}, 0.5, 0.0);
  const auto v0 = enumerate_extreme_points(u0);
  ASSERT_EQ(v0.size(), 1u);
  EXPECT_EQ(v0[0].lambda, u0.forecast);
}

TEST(Uncertainty, ExtremePointCountFormula) {
  for (int m = 1; m <= 7; ++m) {
    for (int g = 1; g <= m; ++g) {
      const auto u = UncertaintySet::from_alpha(std::vector<double>(m, 100.0), 0.2, g);
      const auto pts = enumerate_extreme_points(u);
      EXPECT_EQ(static_cast<int64_t>(pts.size()), extreme_point_count(m, g));
      double binom = 1.0;
      for (int k = 0; k < g; ++k) binom = binom * (m - k) / (k + 1);
      EXPECT_EQ(extreme_point_count(m, g), std::llround(std::ldexp(binom, g)));
      for (const auto& p : pts) EXPECT_TRUE(u.contains(p));
    }
  }
}

TEST(Uncertainty, EnumerationGuards) {
  const auto frac = UncertaintySet::from_alpha({10, 20, 30}, 0.5, 1.5);
  EXPECT_THROW(enumerate_extreme_points(frac), UnsupportedEnumerationError);
  const auto big = UncertaintySet::from_alpha(std::vector<double>(20, 100.0), 0.3, 10.0);
  EXPECT_THROW(enumerate_extreme_points(big, 1000), UnsupportedEnumerationError);
}

TEST(Uncertainty, MembershipRejectsOutsiders) {
  const auto u = UncertaintySet::from_alpha({10, 20}, 0.5, 1.0);
  EXPECT_TRUE(u.contains(u.at({1.0, 0.0})));
  EXPECT_FALSE(u.contains(DemandScenario{{15.0, 30.0}, {}}));
  EXPECT_FALSE(u.contains(DemandScenario{{16.0, 20.0}, {}}));
}

TEST(Uncertainty, TotalDemandExtremes) {
  const auto u = UncertaintySet::from_alpha({10, 20, 30}, 0.1, 1.5);
  // deviations (1, 2, 3): Γ = 1.5 moves 3 fully and 2 halfway
  EXPECT_DOUBLE_EQ(u.max_total_demand(), 64.0);
  EXPECT_DOUBLE_EQ(u.min_total_demand(), 56.0);
}

TEST(Uncertainty, ValidateRejectsBadSets) {
  UncertaintySet u{{10, 20}, {11, 1}, 1.0};
  EXPECT_THROW(u.validate(), ConfigError);
  u = UncertaintySet{{10, 20}, {1, 1}, 3.0};
  EXPECT_THROW(u.validate(), ConfigError);
}

TEST(ScenarioCsv, RoundTrip) {
  const auto u = UncertaintySet::from_alpha({10, 20, 30}, 0.3, 2.0);
  const auto s = sample_scenarios(u, 5, 9);
  const std::string path = temp_path("scenarios.csv");
  write_scenarios_csv(s, path);
  const auto back = read_scenarios_csv(path);
  ASSERT_EQ(back.size(), s.size());
  for (size_t k = 0; k < s.size(); ++k) {
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(back[k].lambda[i], s[k].lambda[i], 1e-12);
  }
  std::remove(path.c_str());
}

}  // namespace
}  // namespace edgerobust
