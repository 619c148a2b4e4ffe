#include "edgerobust/stochastic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "edgerobust/aro_ccg.hpp"
#include "edgerobust/error.hpp"
#include "edgerobust/random.hpp"
#include "formulation.hpp"
#include "inner_lp.hpp"

namespace edgerobust {

using solver::Relation;
using solver::Term;

ScenarioSet ScenarioSet::uniform(std::vector<DemandScenario> scenarios) {
  ScenarioSet s;
  const double p = scenarios.empty() ? 0.0 : 1.0 / static_cast<double>(scenarios.size());
  s.probability.assign(scenarios.size(), p);
  s.scenarios = std::move(scenarios);
  return s;
}

void ScenarioSet::validate(int m_aps) const {
  if (scenarios.empty()) throw ConfigError("scenario set is empty");
  if (probability.size() != scenarios.size()) {
    throw ConfigError("scenario set needs one probability per scenario");
  }
  double sum = 0.0;
  for (double p : probability) {
    if (!(p >= 0.0)) throw ConfigError("scenario probabilities must be nonnegative");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw ConfigError("scenario probabilities must sum to 1");
  for (const auto& s : scenarios) {
    if (static_cast<int>(s.lambda.size()) != m_aps) {
      throw ConfigError("scenario length differs from the number of APs");
    }
    for (double l : s.lambda) {
      if (!(l >= 0.0)) throw ConfigError("scenario demand must be nonnegative");
    }
  }
}

std::vector<DemandScenario> sample_normal_scenarios(const UncertaintySet& u, int count,
                                                    uint64_t seed,
                                                    const NormalSamplerParams& params) {
  u.validate();
  if (count < 0) throw ConfigError("scenario count must be nonnegative");
  if (!(params.sigma_ratio >= 0.0)) throw ConfigError("sigma_ratio must be nonnegative");
  if (!(params.correlation >= 0.0 && params.correlation < 1.0)) {
    throw ConfigError("correlation must lie in [0, 1)");
  }
  Rng rng(seed);
  const int m = u.size();
  const double own = std::sqrt(1.0 - params.correlation);
  const double common = std::sqrt(params.correlation);
  std::vector<DemandScenario> out;
  out.reserve(count);
  std::vector<double> g(m);
  for (int k = 0; k < count; ++k) {
    for (int attempt = 0;; ++attempt) {
      const double shared = rng.normal();
      double l1 = 0.0, linf = 0.0;
      for (int i = 0; i < m; ++i) {
        g[i] = params.sigma_ratio * (own * rng.normal() + common * shared);
        l1 += std::fabs(g[i]);
        linf = std::max(linf, std::fabs(g[i]));
      }
      if (linf <= 1.0 && l1 <= u.gamma) break;
      if (attempt + 1 >= params.max_rejections) {
        double scale = 1.0;
        if (linf > 1.0) scale = 1.0 / linf;
        if (l1 * scale > u.gamma) scale = l1 > 0.0 ? u.gamma / l1 : 0.0;
        for (double& x : g) x *= scale;
        break;
      }
    }
    out.push_back(u.at(g));
  }
  return out;
}

namespace {

struct StochasticModel {
  solver::MilpModel model;
  detail::FirstStageVars fs;
};

StochasticModel build(const Instance& inst, const ScenarioSet& s, const detail::BuildFlags& flags) {
  StochasticModel sm;
  sm.fs = detail::add_first_stage(sm.model, inst, flags);
  for (int k = 0; k < s.size(); ++k) {
    detail::add_allocation(sm.model, inst, sm.fs, s.scenarios[k].lambda, Relation::kEqual,
                           inst.beta * s.probability[k],
                           inst.delay_cap * s.scenarios[k].total(), "^" + std::to_string(k + 1),
                           flags);
  }
  return sm;
}

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Smallest total violation of capacity (requests) and delay cap (request·ms)
// needed to route `lambda`, with its subgradient in y.
struct Violation {
  double value = 0.0;
  std::vector<double> slope;  // d value / d y_k
};

Violation elastic(const Instance& inst, const Sizing& y, const std::vector<double>& lambda) {
  detail::InnerLp lp = detail::build_inner_lp(inst, y, lambda, true);
  const solver::MilpModel& m = lp.model;
  solver::MilpModel e;
  for (const auto& v : m.variables()) e.add_variable(v.name, v.lower, v.upper, 0.0);
  for (int r = 0; r < m.num_constraints(); ++r) {
    auto c = m.constraint(r);
    if (c.relation == Relation::kLessEqual) {
      c.terms.push_back({e.add_variable("s_" + std::to_string(r), 0.0, solver::kInfinity, 1.0), -1.0});
    }
    e.add_constraint(c.terms, c.relation, c.rhs, c.name);
  }
  const solver::LpSolution s = solver::solve_lp(e);
  if (s.status != solver::SolveStatus::kOptimal) throw SolverError("elastic second-stage LP failed");
  Violation v;
  v.value = s.objective;
  for (int k = 0; k <= inst.n_ens; ++k) v.slope.push_back(s.duals[lp.cap_rows[k]] / inst.unit_demand);
  return v;
}

}  // namespace

solver::MilpModel build_stochastic(const Instance& inst, const ScenarioSet& s) {
  s.validate(inst.m_aps);
  return build(inst, s, {}).model;
}

double expected_delay_cost(const Instance& inst, const FirstStagePlan& plan, const ScenarioSet& s) {
  const Sizing y = sizing_of(plan);
  double total = 0.0;
  for (int k = 0; k < s.size(); ++k) {
    const InnerResult r = solve_inner(inst, y, s.scenarios[k].lambda);
    if (!r.feasible) return std::numeric_limits<double>::infinity();
    total += s.probability[k] * r.objective;
  }
  return total;
}

StochasticResult solve_stochastic(const Instance& inst, const ScenarioSet& s,
                                  const StochasticOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  inst.validate();
  s.validate(inst.m_aps);
  StochasticResult res;
  const int N = inst.n_ens;

  if (static_cast<int64_t>(s.size()) * inst.m_aps * (N + 1) <= options.extensive_limit) {
    StochasticModel sm = build(inst, s, {});
    const solver::MilpSolution sol = solver::solve_milp(sm.model, options.milp);
    if (sol.status == solver::SolveStatus::kInfeasible) {
      const std::string cls = detail::diagnose_infeasibility(
          [&](const detail::BuildFlags& f) { return build(inst, s, f).model; }, options.milp);
      throw ModelInfeasibleError("stochastic model infeasible (" + cls + ")", cls);
    }
    if (sol.status != solver::SolveStatus::kOptimal) throw SolverError("stochastic model not solved");
    res.plan = detail::read_plan(inst, sm.fs, sol.values);
    res.objective = sol.objective;
    res.expected_delay_cost = sol.objective - res.plan.cost();
    res.lower_bound = sol.best_bound;
    res.iterations = 1;
    res.seconds = elapsed(start);
    return res;
  }

  // L-shaped decomposition with one aggregated optimality cut per iteration.
  res.decomposed = true;
  solver::MilpModel master;
  detail::FirstStageVars fs = detail::add_first_stage(master, inst, {});
  const int theta = master.add_variable("theta", 0.0, solver::kInfinity, 1.0);
  {
    double peak = 0.0;
    for (const auto& sc : s.scenarios) peak = std::max(peak, sc.total());
    std::vector<Term> t{{fs.y0, 1.0}};
    for (int j = 0; j < N; ++j) t.push_back({fs.y[j], 1.0});
    master.add_constraint(t, Relation::kGreaterEqual, inst.unit_demand * peak, "peak_capacity");
  }
  auto y_terms = [&](const std::vector<double>& coef) {
    std::vector<Term> t{{fs.y0, coef[0]}};
    for (int j = 0; j < N; ++j) t.push_back({fs.y[j], coef[j + 1]});
    return t;
  };

  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  for (int it = 1; it <= options.max_iter; ++it) {
    res.iterations = it;
    const solver::MilpSolution ms = solver::solve_milp(master, options.milp);
    if (ms.status == solver::SolveStatus::kInfeasible) {
      const std::string cls = it == 1 ? detail::diagnose_infeasibility(
                                            [&](const detail::BuildFlags& f) {
                                              solver::MilpModel m;
                                              detail::add_first_stage(m, inst, f);
                                              return m;
                                            },
                                            options.milp)
                                      : "capacity";
      throw ModelInfeasibleError("stochastic model infeasible (" + cls + ")", cls);
    }
    if (ms.status != solver::SolveStatus::kOptimal) throw SolverError("stochastic master not solved");
    lb = std::max(lb, ms.objective);
    const FirstStagePlan plan = detail::read_plan(inst, fs, ms.values);
    const Sizing y = sizing_of(plan);

    double expected = 0.0;
    std::vector<double> slope(N + 1, 0.0);
    int worst_infeasible = -1;
    double worst_violation = 0.0;
    Violation worst_v;
    for (int k = 0; k < s.size(); ++k) {
      detail::InnerLp lp = detail::build_inner_lp(inst, y, s.scenarios[k].lambda, true);
      const solver::LpSolution sol = solver::solve_lp(lp.model);
      if (sol.status != solver::SolveStatus::kOptimal) {
        Violation v = elastic(inst, y, s.scenarios[k].lambda);
        if (v.value > worst_violation) {
          worst_violation = v.value;
          worst_infeasible = k;
          worst_v = std::move(v);
        }
        continue;
      }
      const double p = s.probability[k] * inst.beta;
      expected += p * sol.objective;
      for (int c = 0; c <= N; ++c) slope[c] += p * sol.duals[lp.cap_rows[c]] / inst.unit_demand;
    }
    if (worst_infeasible >= 0) {
      // v(y) + slope·(y' − y) <= 0
      double rhs = -worst_v.value;
      for (int c = 0; c <= N; ++c) rhs += worst_v.slope[c] * y[c];
      master.add_constraint(y_terms(worst_v.slope), Relation::kLessEqual, rhs,
                            "feas_" + std::to_string(it));
      continue;
    }
    const double candidate = plan.cost() + expected;
    if (candidate < ub) {
      ub = candidate;
      res.plan = plan;
      res.expected_delay_cost = expected;
    }
    res.lower_bound = lb;
    if (ub - lb <= options.gap_tol * std::max(1.0, std::fabs(ub))) break;
    // θ >= E + slope·(y' − y)
    std::vector<Term> t = y_terms(slope);
    for (auto& term : t) term.coef = -term.coef;
    t.push_back({theta, 1.0});
    double rhs = expected;
    for (int c = 0; c <= N; ++c) rhs -= slope[c] * y[c];
    master.add_constraint(t, Relation::kGreaterEqual, rhs, "opt_" + std::to_string(it));
  }
  if (!std::isfinite(ub)) throw SolverError("L-shaped decomposition found no feasible plan");
  res.objective = ub;
  res.lower_bound = lb;
  res.seconds = elapsed(start);
  return res;
}

}  // namespace edgerobust
