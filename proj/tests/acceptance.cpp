// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "edgerobust/aro_ccg.hpp"
#include "edgerobust/deterministic.hpp"
#include "edgerobust/error.hpp"
#include "edgerobust/evaluation.hpp"
#include "edgerobust/static_ro.hpp"
#include "edgerobust/stochastic.hpp"
#include "support/oracles.hpp"

namespace {

using namespace edgerobust;
using oracle::relative_gap;

constexpr double kAlpha = 0.3;
constexpr double kGamma = 10.0;
constexpr double kPenalty = 40.0;
constexpr int kTests = 100;

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Base-case runs shared by several criteria, computed once per seed.
struct BaseRun {
  Instance inst;
  UncertaintySet u;
  ModelResult det;
  StaticRoResult ro;
  CcgResult aro;
  double aro_seconds = 0.0;
};

const BaseRun& base_run(uint64_t seed) {
  static std::map<uint64_t, BaseRun> cache;
  auto it = cache.find(seed);
  if (it != cache.end()) return it->second;
  BaseRun r;
  r.inst = generate_instance(GeneratorParams{}, seed);
  r.u = UncertaintySet::from_alpha(r.inst.forecast, kAlpha, kGamma);
  r.det = solve_deterministic(r.inst, r.u.nominal());
  r.ro = solve_static_ro(r.inst, r.u);
  const auto t0 = std::chrono::steady_clock::now();
  r.aro = ccg_solve(r.inst, r.u);
  r.aro_seconds = seconds_since(t0);
  return cache.emplace(seed, std::move(r)).first->second;
}

Outcome oracle_equivalence() {
  int agreed = 0, infeasible_pairs = 0, tried = 0;
  double worst_gap = 0.0, worst_time = 0.0;
  std::string failure;
  CcgOptions opt;
  opt.epsilon = 1e-9;
  for (uint64_t seed = 1; agreed < 20 && tried < 60; ++seed, ++tried) {
    const int m = 3 + static_cast<int>(seed % 2);
    const int n = 2 + static_cast<int>((seed / 2) % 2);
    const Instance inst = oracle::small_instance(m, n, seed);
    const UncertaintySet u =
        UncertaintySet::from_alpha(inst.forecast, kAlpha, static_cast<double>(seed % (m + 1)));
    // 0 solved, 1 infeasible at the nominal level, 2 robust-infeasible
    double ccg = 0.0, ext = 0.0;
    int ccg_kind = 0, ext_kind = 0;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ccg = ccg_solve(inst, u, opt).objective;
    } catch (const ModelInfeasibleError&) {
      ccg_kind = 1;
    } catch (const RobustInfeasibleError&) {
      ccg_kind = 2;
    }
    const double t = seconds_since(t0);
    try {
      ext = extensive_form(inst, u).objective;
    } catch (const ModelInfeasibleError&) {
      ext_kind = 1;
    } catch (const RobustInfeasibleError&) {
      ext_kind = 2;
    }
    if (ccg_kind != ext_kind) {
      failure = "seed " + std::to_string(seed) + " disagrees on feasibility";
      break;
    }
    if (ccg_kind != 0) {
      ++infeasible_pairs;
      continue;
    }
    worst_gap = std::max(worst_gap, relative_gap(ccg, ext));
    worst_time = std::max(worst_time, t);
    if (relative_gap(ccg, ext) > 1e-6 || t > 5.0) {
      failure = "seed " + std::to_string(seed) + ": ccg " + std::to_string(ccg) + " vs extensive " +
                std::to_string(ext) + " in " + std::to_string(t) + " s";
      break;
    }
    ++agreed;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d instances agree (max rel gap %.1e, max ccg time %.2f s; %d infeasible "
                "instances agreed and were not counted)",
                agreed, worst_gap, worst_time, infeasible_pairs);
  return {failure.empty() && agreed >= 20, failure.empty() ? buf : failure};
}

Outcome subproblem_oracle() {
  int agreed = 0, skipped = 0;
  double worst_gap = 0.0;
  std::string failure;
  for (uint64_t seed = 1; agreed < 20 && seed < 200; ++seed) {
    const int m = 2 + static_cast<int>(seed % 3);
    const int n = 1 + static_cast<int>((seed / 3) % 3);
    const Instance inst = oracle::small_instance(m, n, 100 + seed);
    const UncertaintySet u = UncertaintySet::from_alpha(
        inst.forecast, 0.2 + 0.1 * static_cast<double>(seed % 5), 1.0 + static_cast<double>(seed % m));
    const Sizing y = oracle::random_sizing(inst, u, seed);
    const double expected = oracle::vertex_max_inner(inst, u, y);
    if (!std::isfinite(expected)) {
      ++skipped;  // some vertex has no feasible second stage at this y
      continue;
    }
    const SubproblemSolution s = solve_subproblem(inst, u, y);
    worst_gap = std::max(worst_gap, relative_gap(s.objective, expected));
    if (relative_gap(s.objective, expected) > 1e-6) {
      failure = "seed " + std::to_string(seed) + ": subproblem " + std::to_string(s.objective) +
                " vs vertex max " + std::to_string(expected);
      break;
    }
    ++agreed;
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d (instance, y) pairs agree (max rel gap %.1e; %d pairs skipped as not robustly "
                "feasible)",
                agreed, worst_gap, skipped);
  return {failure.empty() && agreed >= 20, failure.empty() ? buf : failure};
}

Outcome collapse() {
  double worst = 0.0;
  int cases = 0;
  auto check = [&](const Instance& inst, double alpha, double gamma) {
    const UncertaintySet u = UncertaintySet::from_alpha(inst.forecast, alpha, gamma);
    const double det = solve_deterministic(inst, u.nominal()).objective;
    const double ro = solve_static_ro(inst, u).objective;
    const double aro = ccg_solve(inst, u).objective;
    worst = std::max({worst, relative_gap(det, ro), relative_gap(det, aro)});
    ++cases;
  };
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance base = generate_instance(GeneratorParams{}, seed);
    check(base, kAlpha, 0.0);
    check(base, 0.0, kGamma);
    const Instance small = oracle::small_instance(3 + seed % 2, 2, seed);
    check(small, kAlpha, 0.0);
    check(small, 0.0, 2.0);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d cases (Γ=0 and α=0), max rel gap %.1e", cases, worst);
  return {worst <= 1e-6, buf};
}

Outcome conservativeness() {
  int ok = 0;
  double worst_excess = -1e300;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const BaseRun& r = base_run(seed);
    const double excess = std::max({r.aro.objective - r.ro.objective,
                                    r.det.objective - r.aro.objective,
                                    r.det.objective - r.ro.objective});
    worst_excess = std::max(worst_excess, excess);
    if (excess <= 1e-6) ++ok;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "det <= ARO <= RO on %d/20 base-case instances (max violation %.2e)",
                ok, std::max(0.0, worst_excess));
  return {ok == 20, buf};
}

Outcome monotonicity() {
  const Instance inst = generate_instance(GeneratorParams{}, 1);
  std::string gam, alp;
  bool ok = true;
  double prev = -1e300;
  for (double g : {0.0, 5.0, 10.0, 15.0, 20.0}) {
    const double v = ccg_solve(inst, UncertaintySet::from_alpha(inst.forecast, kAlpha, g)).objective;
    ok = ok && v >= prev - 1e-6;
    prev = v;
    char b[32];
    std::snprintf(b, sizeof b, "%s%.5f", gam.empty() ? "" : " ", v);
    gam += b;
  }
  prev = -1e300;
  for (double a : {0.0, 0.2, 0.4, 0.6}) {
    const double v = ccg_solve(inst, UncertaintySet::from_alpha(inst.forecast, a, kGamma)).objective;
    ok = ok && v >= prev - 1e-6;
    prev = v;
    char b[32];
    std::snprintf(b, sizeof b, "%s%.5f", alp.empty() ? "" : " ", v);
    alp += b;
  }
  return {ok, "Γ sweep [" + gam + "], α sweep [" + alp + "]"};
}

Outcome ccg_behavior() {
  int ok = 0;
  size_t max_iter = 0;
  double max_time = 0.0, max_gap = 0.0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const BaseRun& r = base_run(seed);
    const auto& its = r.aro.trace.iterations;
    bool monotone = true;
    for (size_t k = 1; k < its.size(); ++k) {
      monotone = monotone && its[k].lb >= its[k - 1].lb - 1e-6 && its[k].ub <= its[k - 1].ub + 1e-6;
    }
    for (const auto& it : its) monotone = monotone && it.lb <= it.ub + 1e-6;
    max_iter = std::max(max_iter, its.size());
    max_time = std::max(max_time, r.aro_seconds);
    max_gap = std::max(max_gap, r.aro.trace.final_gap);
    if (r.aro.converged() && r.aro.trace.final_gap <= 1e-4 && its.size() <= 10 &&
        r.aro_seconds <= 120.0 && monotone) {
      ++ok;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/10 converged (max %zu iterations, max %.1f s, max final gap %.1e)", ok,
                max_iter, max_time, max_gap);
  return {ok == 10, buf};
}

ComparisonReport compare(const BaseRun& r, uint64_t seed, const FirstStagePlan* so_plan = nullptr) {
  std::vector<MethodPlan> plans{{"deterministic", r.det.plan, r.det.objective},
                                {"static_ro", r.ro.plan, r.ro.objective},
                                {"aro", r.aro.plan, r.aro.objective}};
  if (so_plan) plans.push_back({"stochastic", *so_plan, 0.0});
  return evaluate_methods(r.inst, r.u, plans, kTests, kPenalty, 7000 + seed);
}

Outcome operation_dominance() {
  int dominated = 0;
  double max_drop = 0.0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const ComparisonReport rep = compare(base_run(seed), seed);
    if (rep.at("deterministic").total_worst >= rep.at("aro").total_worst) ++dominated;
    max_drop = std::max(max_drop, rep.at("aro").max_drop_ratio);
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "deterministic worst >= ARO worst on %d/20; max ARO drop ratio %.1e", dominated,
                max_drop);
  return {dominated >= 18 && max_drop <= 1e-9, buf};
}

Outcome robust_bound() {
  int violations = 0, checked = 0;
  double worst_slack = 1e300;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const BaseRun& r = base_run(seed);
    const ComparisonReport rep = compare(r, seed);
    for (double total : rep.at("aro").realized_total) {
      ++checked;
      worst_slack = std::min(worst_slack, r.aro.objective - total);
      if (total > r.aro.objective + 1e-6) ++violations;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d/%d test scenarios within the ARO objective (min slack %.3e)",
                checked - violations, checked, worst_slack);
  return {violations == 0, buf};
}

Outcome solver_layer() {
  int agreed = 0;
  double worst_gap = 0.0, worst_residual = 0.0;
  for (int seed = 0; seed < 100; ++seed) {
    const solver::MilpModel m = oracle::random_milp(seed);
    const oracle::EnumerationResult e = oracle::enumerate_binaries(m);
    const solver::MilpSolution s = solver::solve_milp(m);
    worst_residual = std::max(worst_residual, e.worst_residual);
    if (!e.feasible) {
      if (s.status == solver::SolveStatus::kInfeasible) ++agreed;
      continue;
    }
    if (s.status != solver::SolveStatus::kOptimal) continue;
    const double gap = std::abs(s.objective - e.objective) / std::max(1.0, std::abs(e.objective));
    worst_gap = std::max(worst_gap, gap);
    if (gap <= 1e-6) ++agreed;
  }
  for (int seed = 1; seed <= 100; ++seed) {
    const solver::MilpModel m = oracle::random_lp(seed);
    const solver::LpSolution s = solver::solve_lp(m);
    if (s.status == solver::SolveStatus::kOptimal) {
      worst_residual = std::max(worst_residual, oracle::duality_residual(m, s));
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/100 MILPs match enumeration (max gap %.1e); max LP duality residual %.1e",
                agreed, worst_gap, worst_residual);
  return {agreed == 100 && worst_residual <= 1e-6, buf};
}

Outcome stochastic_ordering() {
  int ordered = 0, below_det = 0, above_aro = 0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const BaseRun& r = base_run(seed);
    const ScenarioSet train =
        ScenarioSet::uniform(sample_normal_scenarios(r.u, 1000, 9000 + seed));
    const StochasticResult so = solve_stochastic(r.inst, train);
    const ComparisonReport rep = compare(r, seed, &so.plan);
    const double det = rep.at("deterministic").total_worst;
    const double sto = rep.at("stochastic").total_worst;
    const double aro = rep.at("aro").total_worst;
    below_det += sto <= det;
    above_aro += sto >= aro;
    if (sto <= det && sto >= aro) ++ordered;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%d/10 instances with ARO <= SO <= deterministic (worst case); "
                "SO <= det on %d, SO >= ARO on %d",
                ordered, below_det, above_aro);
  return {ordered >= 8, buf};
}

}  // namespace

int main(int argc, char** argv) {
  // --known-failure <id>: still printed as FAIL, but not counted in the exit status.
  std::vector<std::string> known;
  for (int a = 1; a < argc; a += 2) {
    if (std::string(argv[a]) != "--known-failure" || a + 1 >= argc) {
      std::fprintf(stderr, "usage: acceptance [--known-failure <id>]...\n");
      return 2;
    }
    known.push_back(std::string(argv[a + 1]) + " ");
  }
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"C1 oracle equivalence", oracle_equivalence},
      {"C2 subproblem oracle", subproblem_oracle},
      {"C3 collapse at Γ=0 / α=0", collapse},
      {"C4 conservativeness ordering", conservativeness},
      {"C5 monotonicity in Γ and α", monotonicity},
      {"C6 CCG convergence", ccg_behavior},
      {"C7 operation-stage dominance", operation_dominance},
      {"C8 robust bound", robust_bound},
      {"C9 solver layer", solver_layer},
      {"C10 stochastic baseline ordering", stochastic_ordering},
  };
  int failed = 0, excused = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool is_known = std::any_of(known.begin(), known.end(), [&](const std::string& k) {
      return std::string(c.name).rfind(k, 0) == 0;
    });
    std::printf("%s %s: %s [%.1f s]%s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                seconds_since(t0), !o.pass && is_known ? " (known failure)" : "");
    std::fflush(stdout);
    if (!o.pass) ++(is_known ? excused : failed);
  }
  std::printf("%d/%zu criteria passed", static_cast<int>(criteria.size()) - failed - excused,
              criteria.size());
  if (excused > 0) std::printf(", %d known failure(s) not counted", excused);
  std::printf("\n");
  return failed == 0 ? 0 : 1;
}
