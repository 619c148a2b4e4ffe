#include <algorithm>
#include <cmath>
#include <numeric>

#include "edgerobust/aro_ccg.hpp"
#include "edgerobust/error.hpp"
#include "formulation.hpp"
#include "inner_lp.hpp"

namespace edgerobust {

using solver::Relation;
using solver::Term;

Sizing sizing_of(const FirstStagePlan& plan) {
  Sizing y{plan.size_cloud};
  y.insert(y.end(), plan.size_edge.begin(), plan.size_edge.end());
  return y;
}

DemandScenario initial_scenario(const UncertaintySet& u) {
  u.validate();
  const int m = u.size();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return u.deviation[a] > u.deviation[b]; });
  const int whole = static_cast<int>(std::floor(u.gamma));
  std::vector<double> g(m, 0.0);
  for (int k = 0; k < whole && k < m; ++k) g[order[k]] = 1.0;
  if (whole < m) g[order[whole]] = u.gamma - whole;
  return u.at(g);
}

namespace detail {

InnerLp build_inner_lp(const Instance& inst, const Sizing& y, const std::vector<double>& lambda,
                       bool delay_cap) {
  const int M = inst.m_aps;
  const int N = inst.n_ens;
  if (static_cast<int>(y.size()) != N + 1) throw ConfigError("sizing vector must have N+1 entries");
  if (static_cast<int>(lambda.size()) != M) throw ConfigError("demand vector length differs from M");
  InnerLp lp;
  auto& m = lp.model;
  lp.x0.resize(M);
  lp.x.assign(M, std::vector<int>(N));
  for (int i = 0; i < M; ++i) {
    lp.x0[i] = m.add_variable("x_" + std::to_string(i) + "_0", 0.0, solver::kInfinity,
                              inst.delay_cloud[i]);
    for (int j = 0; j < N; ++j) {
      lp.x[i][j] = m.add_variable("x_" + std::to_string(i) + "_" + std::to_string(j + 1), 0.0,
                                  solver::kInfinity, inst.delay_edge[i][j]);
    }
  }
  for (int i = 0; i < M; ++i) {
    std::vector<Term> t{{lp.x0[i], 1.0}};
    for (int j = 0; j < N; ++j) t.push_back({lp.x[i][j], 1.0});
    lp.flow_rows.push_back(m.add_constraint(t, Relation::kEqual, lambda[i], "flow_" + std::to_string(i)));
  }
  for (int k = 0; k <= N; ++k) {
    std::vector<Term> t;
    for (int i = 0; i < M; ++i) t.push_back({k == 0 ? lp.x0[i] : lp.x[i][k - 1], 1.0});
    lp.cap_rows.push_back(m.add_constraint(t, Relation::kLessEqual,
                                           std::max(0.0, y[k]) / inst.unit_demand,
                                           "cap_" + std::to_string(k)));
  }
  if (delay_cap) {
    std::vector<Term> t;
    for (int i = 0; i < M; ++i) {
      t.push_back({lp.x0[i], inst.delay_cloud[i]});
      for (int j = 0; j < N; ++j) t.push_back({lp.x[i][j], inst.delay_edge[i][j]});
    }
    const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    lp.delay_row = m.add_constraint(t, Relation::kLessEqual, inst.delay_cap * total, "delay");
  }
  return lp;
}

}  // namespace detail

InnerResult solve_inner(const Instance& inst, const Sizing& y, const std::vector<double>& lambda,
                        bool delay_cap) {
  detail::InnerLp lp = detail::build_inner_lp(inst, y, lambda, delay_cap);
  const solver::LpSolution s = solver::solve_lp(lp.model);
  InnerResult r;
  if (s.status != solver::SolveStatus::kOptimal) return r;
  r.feasible = true;
  std::vector<double> x0(inst.m_aps);
  std::vector<std::vector<double>> x(inst.m_aps, std::vector<double>(inst.n_ens));
  for (int i = 0; i < inst.m_aps; ++i) {
    x0[i] = std::max(0.0, s.values[lp.x0[i]]);
    for (int j = 0; j < inst.n_ens; ++j) x[i][j] = std::max(0.0, s.values[lp.x[i][j]]);
  }
  r.allocation = make_allocation(inst, std::move(x0), std::move(x),
                                 std::accumulate(lambda.begin(), lambda.end(), 0.0));
  r.delay = r.allocation.total_delay;
  r.objective = inst.beta * r.delay;
  return r;
}

namespace {

struct MasterModel {
  solver::MilpModel model;
  detail::FirstStageVars fs;
  int eta = -1;
};

MasterModel build(const Instance& inst, const std::vector<DemandScenario>& scenarios,
                  const detail::BuildFlags& flags) {
  if (scenarios.empty()) throw ConfigError("master needs at least one scenario");
  MasterModel mm;
  mm.fs = detail::add_first_stage(mm.model, inst, flags);
  mm.eta = mm.model.add_variable("eta", 0.0, solver::kInfinity, 1.0);
  for (size_t l = 0; l < scenarios.size(); ++l) {
    const auto& lambda = scenarios[l].lambda;
    if (static_cast<int>(lambda.size()) != inst.m_aps) {
      throw ConfigError("scenario length differs from the number of APs");
    }
    const std::string tag = "^" + std::to_string(l + 1);
    detail::AllocationVars a = detail::add_allocation(
        mm.model, inst, mm.fs, lambda, Relation::kEqual, 0.0,
        inst.delay_cap * scenarios[l].total(), tag, flags);
    std::vector<Term> t = detail::delay_terms(inst, a, -inst.beta);
    t.push_back({mm.eta, 1.0});
    mm.model.add_constraint(t, Relation::kGreaterEqual, 0.0, "epigraph" + tag);
  }
  return mm;
}

}  // namespace

solver::MilpModel build_master(const Instance& inst, const std::vector<DemandScenario>& scenarios) {
  return build(inst, scenarios, {}).model;
}

MasterSolution solve_master(const Instance& inst, const std::vector<DemandScenario>& scenarios,
                            const solver::MilpOptions& options) {
  MasterModel mm = build(inst, scenarios, {});
  const solver::MilpSolution s = solver::solve_milp(mm.model, options);
  if (s.status == solver::SolveStatus::kInfeasible) {
    const std::string cls = detail::diagnose_infeasibility(
        [&](const detail::BuildFlags& f) { return build(inst, scenarios, f).model; }, options);
    throw ModelInfeasibleError("master problem infeasible (" + cls + ")", cls);
  }
  if (s.status == solver::SolveStatus::kUnbounded) throw SolverError("master problem unbounded");
  if (s.status == solver::SolveStatus::kTimeLimit) {
    throw TimeoutError("master problem hit the time limit", s.best_bound);
  }
  MasterSolution r;
  r.plan = detail::read_plan(inst, mm.fs, s.values);
  r.eta = s.values[mm.eta];
  r.lower_bound = r.plan.cost() + r.eta;
  r.nodes = s.nodes;
  r.seconds = s.seconds;
  return r;
}

ExtensiveResult extensive_form(const Instance& inst, const UncertaintySet& u,
                               const solver::MilpOptions& options, int64_t vertex_limit) {
  const std::vector<DemandScenario> vertices = enumerate_extreme_points(u, vertex_limit);
  MasterSolution m;
  try {
    m = solve_master(inst, vertices, options);
  } catch (const ModelInfeasibleError& e) {
    const DemandScenario worst = initial_scenario(u);
    bool first_ok = true;
    try {
      solve_master(inst, {worst}, options);
    } catch (const ModelInfeasibleError&) {
      first_ok = false;
    }
    if (first_ok) throw RobustInfeasibleError("no plan serves every vertex of D within the delay cap");
    throw;
  }
  ExtensiveResult r;
  r.plan = m.plan;
  r.objective = m.lower_bound;
  r.vertices = static_cast<int64_t>(vertices.size());
  return r;
}

}  // namespace edgerobust
