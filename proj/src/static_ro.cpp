#include "edgerobust/static_ro.hpp"

#include <algorithm>
#include <numeric>

#include "edgerobust/error.hpp"
#include "formulation.hpp"

namespace edgerobust {

using solver::kInfinity;
using solver::Relation;
using solver::Term;

namespace {

struct RoModel {
  solver::MilpModel model;
  detail::FirstStageVars fs;
  detail::AllocationVars alloc;
  int u = -1;
  std::vector<int> v, gamma, mu, sigma, g, t;
};

RoModel build(const Instance& inst, const UncertaintySet& unc, const detail::BuildFlags& flags) {
  unc.validate();
  if (unc.size() != inst.m_aps) throw ConfigError("uncertainty set size differs from the number of APs");
  const int M = inst.m_aps;
  RoModel r;
  r.fs = detail::add_first_stage(r.model, inst, flags);

  const double reach = std::min(1.0, unc.gamma);
  std::vector<double> cover(M);
  for (int i = 0; i < M; ++i) cover[i] = unc.forecast[i] + reach * unc.deviation[i];
  detail::BuildFlags alloc_flags = flags;
  alloc_flags.delay_cap = false;  // replaced by the dualized row below
  r.alloc = detail::add_allocation(r.model, inst, r.fs, cover, Relation::kGreaterEqual, inst.beta,
                                   0.0, "", alloc_flags);

  auto& m = r.model;
  r.u = m.add_variable("u", 0.0, kInfinity);
  for (int i = 0; i < M; ++i) {
    const std::string s = std::to_string(i);
    r.v.push_back(m.add_variable("v_" + s, 0.0, kInfinity));
    r.gamma.push_back(m.add_variable("gamma_" + s, 0.0, kInfinity));
    r.mu.push_back(m.add_variable("mu_" + s, 0.0, kInfinity));
    r.sigma.push_back(m.add_variable("sigma_" + s, 0.0, kInfinity));
    r.g.push_back(m.add_variable("g_" + s, -kInfinity, kInfinity));
    r.t.push_back(m.add_variable("t_" + s, -kInfinity, 1.0));
  }
  const double total_forecast = std::accumulate(unc.forecast.begin(), unc.forecast.end(), 0.0);

  if (flags.delay_cap) {
    // Σ d x + D^m (uΓ + Σμ + Σσ) <= D^m Σλ^f
    std::vector<Term> t = detail::delay_terms(inst, r.alloc);
    t.push_back({r.u, inst.delay_cap * unc.gamma});
    for (int i = 0; i < M; ++i) {
      t.push_back({r.mu[i], inst.delay_cap});
      t.push_back({r.sigma[i], inst.delay_cap});
    }
    r.alloc.delay_row = m.add_constraint(t, Relation::kLessEqual, inst.delay_cap * total_forecast,
                                         "delay_robust");
  }
  {
    // uΓ + Σμ + Σσ = −Σ g λ̂
    std::vector<Term> t{{r.u, unc.gamma}};
    for (int i = 0; i < M; ++i) {
      t.push_back({r.mu[i], 1.0});
      t.push_back({r.sigma[i], 1.0});
      t.push_back({r.g[i], unc.deviation[i]});
    }
    m.add_constraint(t, Relation::kEqual, 0.0, "linking");
  }
  {
    std::vector<Term> t;
    for (int i = 0; i < M; ++i) t.push_back({r.t[i], 1.0});
    m.add_constraint(t, Relation::kLessEqual, unc.gamma, "budget_t");
  }
  for (int i = 0; i < M; ++i) {
    const std::string s = std::to_string(i);
    m.add_constraint({{r.t[i], -1.0}, {r.g[i], 1.0}}, Relation::kLessEqual, 0.0, "g_le_t_" + s);
    m.add_constraint({{r.t[i], -1.0}, {r.g[i], -1.0}}, Relation::kLessEqual, 0.0, "neg_g_le_t_" + s);
    m.add_constraint({{r.g[i], 1.0}}, Relation::kLessEqual, 1.0, "g_le_1_" + s);
    m.add_constraint({{r.g[i], -1.0}}, Relation::kLessEqual, 1.0, "neg_g_le_1_" + s);
    m.add_constraint({{r.v[i], 1.0}, {r.gamma[i], -1.0}, {r.mu[i], 1.0}, {r.sigma[i], -1.0}},
                     Relation::kLessEqual, -unc.deviation[i], "dual_g_" + s);
    m.add_constraint({{r.u, 1.0}, {r.v[i], -1.0}, {r.gamma[i], -1.0}}, Relation::kGreaterEqual, 0.0,
                     "dual_t_" + s);
  }
  return r;
}

}  // namespace

solver::MilpModel build_static_ro(const Instance& inst, const UncertaintySet& u) {
  return build(inst, u, {}).model;
}

StaticRoResult solve_static_ro(const Instance& inst, const UncertaintySet& u,
                               const solver::MilpOptions& options) {
  inst.validate();
  RoModel r = build(inst, u, {});
  const solver::MilpSolution s = solver::solve_milp(r.model, options);
  if (s.status == solver::SolveStatus::kInfeasible) {
    const std::string cls = detail::diagnose_infeasibility(
        [&](const detail::BuildFlags& f) { return build(inst, u, f).model; }, options);
    throw ModelInfeasibleError("static robust model infeasible (" + cls + ")", cls);
  }
  if (s.status == solver::SolveStatus::kUnbounded) throw SolverError("static robust model unbounded");

  StaticRoResult res;
  res.plan = detail::read_plan(inst, r.fs, s.values);
  double served = 0.0;
  for (int i = 0; i < inst.m_aps; ++i) {
    served += s.values[r.alloc.x0[i]];
    for (int j = 0; j < inst.n_ens; ++j) served += s.values[r.alloc.x[i][j]];
  }
  res.allocation = detail::read_allocation(inst, r.alloc, s.values, served);
  res.objective = s.objective;
  res.delay_cost = inst.beta * res.allocation.total_delay;
  res.nodes = s.nodes;
  res.seconds = s.seconds;

  auto& d = res.duals;
  d.u = s.values[r.u];
  double dual_mass = d.u * u.gamma;
  for (int i = 0; i < inst.m_aps; ++i) {
    d.v.push_back(s.values[r.v[i]]);
    d.gamma.push_back(s.values[r.gamma[i]]);
    d.mu.push_back(s.values[r.mu[i]]);
    d.sigma.push_back(s.values[r.sigma[i]]);
    d.g.push_back(s.values[r.g[i]]);
    d.t.push_back(s.values[r.t[i]]);
    dual_mass += d.mu.back() + d.sigma.back();
  }
  res.delay_rhs = inst.delay_cap * (std::accumulate(u.forecast.begin(), u.forecast.end(), 0.0) - dual_mass);
  return res;
}

}  // namespace edgerobust
