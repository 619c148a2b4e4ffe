#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "edgerobust/aro_ccg.hpp"
#include "edgerobust/error.hpp"
#include "inner_lp.hpp"

namespace edgerobust {

using solver::kInfinity;
using solver::Relation;
using solver::Term;

namespace {

double delay_of(const Instance& inst, int i, int k) {
  return k == 0 ? inst.delay_cloud[i] : inst.delay_edge[i][k - 1];
}

std::vector<double> lambda_of(const UncertaintySet& u, const std::vector<double>& t) {
  std::vector<double> l(u.size());
  for (int i = 0; i < u.size(); ++i) l[i] = u.forecast[i] + t[i] * u.deviation[i];
  return l;
}

void check_inputs(const Instance& inst, const UncertaintySet& u, const Sizing& y) {
  u.validate();
  if (u.size() != inst.m_aps) throw ConfigError("uncertainty set size differs from the number of APs");
  if (static_cast<int>(y.size()) != inst.n_ens + 1) throw ConfigError("sizing vector must have N+1 entries");
  for (double v : y) {
    if (!(v >= 0.0)) throw ConfigError("sizing must be nonnegative");
  }
}

// Value of the inner problem at λ(t) for the given kind; +inf when infeasible.
struct InnerEval {
  double value = kInfinity;
  solver::LpSolution lp;
  detail::InnerLp model;
};

InnerEval evaluate(const Instance& inst, const UncertaintySet& u, const Sizing& y,
                   const std::vector<double>& t, SubproblemKind kind) {
  const std::vector<double> lambda = lambda_of(u, t);
  InnerEval e;
  e.model = detail::build_inner_lp(inst, y, lambda, kind == SubproblemKind::kWorstDelay);
  e.lp = solver::solve_lp(e.model.model);
  if (e.lp.status != solver::SolveStatus::kOptimal) return e;
  e.value = e.lp.objective;
  if (kind == SubproblemKind::kFeasibility) {
    e.value -= inst.delay_cap * std::accumulate(lambda.begin(), lambda.end(), 0.0);
  }
  return e;
}

// Moves t to a vertex of {0 <= t <= 1, Σt <= Γ} without decreasing the inner
// value, which is convex in λ. Returns the number of moves.
int purify(const Instance& inst, const UncertaintySet& u, const Sizing& y, std::vector<double>& t,
           SubproblemKind kind) {
  constexpr double kTol = 1e-7;
  int moves = 0;
  for (;;) {
    std::vector<int> frac;
    double sum = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] < kTol) t[i] = 0.0;
      if (t[i] > 1.0 - kTol) t[i] = 1.0;
      if (t[i] > 0.0 && t[i] < 1.0) frac.push_back(static_cast<int>(i));
      sum += t[i];
    }
    std::vector<double> up = t, down = t;
    if (frac.size() >= 2) {
      const int a = frac[0], b = frac[1];
      const double s_up = std::min(1.0 - t[a], t[b]);
      up[a] += s_up;
      up[b] -= s_up;
      const double s_down = std::min(t[a], 1.0 - t[b]);
      down[a] -= s_down;
      down[b] += s_down;
    } else if (frac.size() == 1 && sum < u.gamma - kTol) {
      const int a = frac[0];
      up[a] = std::min(1.0, t[a] + (u.gamma - sum));
      down[a] = 0.0;
    } else {
      return moves;
    }
    const double v_up = evaluate(inst, u, y, up, kind).value;
    const double v_down = evaluate(inst, u, y, down, kind).value;
    t = v_up >= v_down ? up : down;
    ++moves;
  }
}

struct Duals {
  std::vector<double> pi;  // scaled, cloud first
  double mu = 0.0;
  std::vector<double> sigma;
};

// Smallest duals (by sum) that certify the same complementarity pattern; the
// dual cap is only active if these still reach it.
Duals minimal_duals(const Instance& inst, const std::vector<std::vector<int>>& x_zero,
                    const std::vector<int>& pi_zero, bool mu_zero, bool with_mu) {
  const int M = inst.m_aps;
  const int N = inst.n_ens;
  solver::MilpModel m;
  std::vector<int> pi(N + 1), sigma(M);
  for (int k = 0; k <= N; ++k) {
    pi[k] = m.add_variable("pi_" + std::to_string(k), 0.0, pi_zero[k] ? 0.0 : kInfinity, 1.0);
  }
  const int mu = m.add_variable("mu", 0.0, (with_mu && !mu_zero) ? kInfinity : 0.0, 1.0);
  for (int i = 0; i < M; ++i) sigma[i] = m.add_variable("sigma_" + std::to_string(i), 0.0, kInfinity, 1.0);
  for (int i = 0; i < M; ++i) {
    for (int k = 0; k <= N; ++k) {
      const double d = delay_of(inst, i, k);
      m.add_constraint({{pi[k], 1.0}, {mu, d}, {sigma[i], -1.0}},
                       x_zero[i][k] ? Relation::kGreaterEqual : Relation::kEqual, -d, "rc");
    }
  }
  const solver::LpSolution s = solver::solve_lp(m);
  if (s.status != solver::SolveStatus::kOptimal) {
    throw SolverError("complementarity pattern of the subproblem admits no dual certificate");
  }
  Duals out;
  for (int k = 0; k <= N; ++k) out.pi.push_back(s.values[pi[k]]);
  out.mu = s.values[mu];
  for (int i = 0; i < M; ++i) out.sigma.push_back(s.values[sigma[i]]);
  return out;
}

// Duals of the inner LP in the scaled sign convention of the KKT system.
Duals lp_duals(const InnerEval& e, int n_ens) {
  Duals d;
  for (int k = 0; k <= n_ens; ++k) d.pi.push_back(std::max(0.0, -e.lp.duals[e.model.cap_rows[k]]));
  d.mu = e.model.delay_row >= 0 ? std::max(0.0, -e.lp.duals[e.model.delay_row]) : 0.0;
  for (int r : e.model.flow_rows) d.sigma.push_back(e.lp.duals[r]);
  return d;
}

}  // namespace

BigM bigm_bounds(const Instance& inst, const UncertaintySet& u, const Sizing& y) {
  check_inputs(inst, u, y);
  BigM b;
  double total_max = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    b.flow.push_back(u.forecast[i] + u.deviation[i]);
    total_max += b.flow.back();
  }
  b.cloud = y[0] / inst.unit_demand;
  for (int j = 1; j <= inst.n_ens; ++j) b.edge.push_back(y[j] / inst.unit_demand);
  b.delay = inst.delay_cap * total_max;
  b.dual_cap = 10.0 * inst.max_delay() + 10.0 * inst.delay_cap;
  return b;
}

solver::MilpModel build_subproblem(const Instance& inst, const UncertaintySet& u, const Sizing& y,
                                   const BigM& bigm, SubproblemKind kind, SubproblemVars* out) {
  check_inputs(inst, u, y);
  const int M = inst.m_aps;
  const int N = inst.n_ens;
  const bool worst = kind == SubproblemKind::kWorstDelay;
  const double cap = bigm.dual_cap;
  solver::MilpModel m;
  m.set_sense(solver::Sense::kMaximize);
  SubproblemVars v;

  for (int i = 0; i < M; ++i) {
    const double obj = worst ? 0.0 : -inst.delay_cap * u.deviation[i];
    v.t.push_back(m.add_variable("t_" + std::to_string(i), 0.0, 1.0, obj));
  }
  v.x0.resize(M);
  v.x.assign(M, std::vector<int>(N));
  for (int i = 0; i < M; ++i) {
    v.x0[i] = m.add_variable("x_" + std::to_string(i) + "_0", 0.0, bigm.flow[i], inst.delay_cloud[i]);
    for (int j = 0; j < N; ++j) {
      v.x[i][j] = m.add_variable("x_" + std::to_string(i) + "_" + std::to_string(j + 1), 0.0,
                                 bigm.flow[i], inst.delay_edge[i][j]);
    }
  }
  v.pi0 = m.add_variable("pi_0", 0.0, cap);
  for (int j = 0; j < N; ++j) v.pi.push_back(m.add_variable("pi_" + std::to_string(j + 1), 0.0, cap));
  if (worst) v.mu = m.add_variable("mu", 0.0, cap);
  for (int i = 0; i < M; ++i) v.sigma.push_back(m.add_variable("sigma_" + std::to_string(i), 0.0, kInfinity));
  for (int i = 0; i < M; ++i) v.u0.push_back(m.add_binary("u0_" + std::to_string(i)));
  v.u1.assign(M, std::vector<int>(N));
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < N; ++j) {
      v.u1[i][j] = m.add_binary("u1_" + std::to_string(i) + "_" + std::to_string(j + 1));
    }
  }
  v.u2 = m.add_binary("u2");
  for (int j = 0; j < N; ++j) v.u3.push_back(m.add_binary("u3_" + std::to_string(j + 1)));
  if (worst) v.u4 = m.add_binary("u4");

  double forecast_total = std::accumulate(u.forecast.begin(), u.forecast.end(), 0.0);
  if (!worst) m.set_objective_offset(-inst.delay_cap * forecast_total);

  // flow balance against λ = λ^f + t λ̂, and the budget on t
  for (int i = 0; i < M; ++i) {
    std::vector<Term> t{{v.x0[i], 1.0}, {v.t[i], -u.deviation[i]}};
    for (int j = 0; j < N; ++j) t.push_back({v.x[i][j], 1.0});
    m.add_constraint(t, Relation::kEqual, u.forecast[i], "flow_" + std::to_string(i));
  }
  {
    std::vector<Term> t;
    for (int i = 0; i < M; ++i) t.push_back({v.t[i], 1.0});
    m.add_constraint(t, Relation::kLessEqual, u.gamma, "budget_t");
  }

  // stationarity: rc = d (1 + μ) + π_k − σ_i in [0, cap·u], x <= M (1 − u)
  for (int i = 0; i < M; ++i) {
    for (int k = 0; k <= N; ++k) {
      const double d = delay_of(inst, i, k);
      const int pi = k == 0 ? v.pi0 : v.pi[k - 1];
      const int x = k == 0 ? v.x0[i] : v.x[i][k - 1];
      const int b = k == 0 ? v.u0[i] : v.u1[i][k - 1];
      const std::string s = std::to_string(i) + "_" + std::to_string(k);
      std::vector<Term> rc{{pi, 1.0}, {v.sigma[i], -1.0}};
      if (worst) rc.push_back({v.mu, d});
      m.add_constraint(rc, Relation::kGreaterEqual, -d, "rc_" + s);
      rc.push_back({b, -cap});
      m.add_constraint(rc, Relation::kLessEqual, -d, "rc_on_" + s);
      m.add_constraint({{x, 1.0}, {b, bigm.flow[i]}}, Relation::kLessEqual, bigm.flow[i], "x_on_" + s);
    }
  }

  // capacity: Σx <= y/w, slack <= M·u, π <= cap (1 − u)
  for (int k = 0; k <= N; ++k) {
    const double ycap = k == 0 ? bigm.cloud : bigm.edge[k - 1];
    const int b = k == 0 ? v.u2 : v.u3[k - 1];
    const int pi = k == 0 ? v.pi0 : v.pi[k - 1];
    std::vector<Term> load;
    for (int i = 0; i < M; ++i) load.push_back({k == 0 ? v.x0[i] : v.x[i][k - 1], 1.0});
    const std::string s = std::to_string(k);
    m.add_constraint(load, Relation::kLessEqual, ycap, "cap_" + s);
    for (auto& term : load) term.coef = -1.0;
    load.push_back({b, -ycap});
    m.add_constraint(load, Relation::kLessEqual, -ycap, "cap_slack_" + s);
    m.add_constraint({{pi, 1.0}, {b, cap}}, Relation::kLessEqual, cap, "pi_on_" + s);
  }

  if (worst) {
    // Σdx <= D^m Σλ, slack <= M⁴ u⁴, μ <= cap (1 − u⁴)
    std::vector<Term> t;
    for (int i = 0; i < M; ++i) {
      t.push_back({v.x0[i], inst.delay_cloud[i]});
      for (int j = 0; j < N; ++j) t.push_back({v.x[i][j], inst.delay_edge[i][j]});
      t.push_back({v.t[i], -inst.delay_cap * u.deviation[i]});
    }
    m.add_constraint(t, Relation::kLessEqual, inst.delay_cap * forecast_total, "delay");
    for (auto& term : t) term.coef = -term.coef;
    t.push_back({v.u4, -bigm.delay});
    m.add_constraint(t, Relation::kLessEqual, -inst.delay_cap * forecast_total, "delay_slack");
    m.add_constraint({{v.mu, 1.0}, {v.u4, cap}}, Relation::kLessEqual, cap, "mu_on");
  }
  if (out) *out = std::move(v);
  return m;
}

SubproblemSolution solve_subproblem(const Instance& inst, const UncertaintySet& u, const Sizing& y,
                                    const SubproblemOptions& options, SubproblemKind kind) {
  const auto start = std::chrono::steady_clock::now();
  const int M = inst.m_aps;
  const int N = inst.n_ens;
  const bool worst = kind == SubproblemKind::kWorstDelay;
  SubproblemSolution r;
  r.bigm = bigm_bounds(inst, u, y);

  for (;; ++r.escalations) {
    SubproblemVars v;
    const solver::MilpModel model = build_subproblem(inst, u, y, r.bigm, kind, &v);
    const solver::MilpSolution s = solver::solve_milp(model, options.milp);
    r.nodes += s.nodes;
    if (s.status == solver::SolveStatus::kInfeasible) {
      r.feasible = false;
      break;
    }
    if (s.status == solver::SolveStatus::kTimeLimit) {
      throw TimeoutError("subproblem hit the time limit", s.best_bound);
    }
    if (s.status != solver::SolveStatus::kOptimal) throw SolverError("subproblem unbounded");
    const auto& val = s.values;
    const double cap = r.bigm.dual_cap;

    // complementarity audit on the raw MILP point
    std::vector<std::vector<int>> x_zero(M, std::vector<int>(N + 1));
    std::vector<int> pi_zero(N + 1);
    double worst_product = 0.0;
    for (int i = 0; i < M; ++i) {
      for (int k = 0; k <= N; ++k) {
        const int xv = k == 0 ? v.x0[i] : v.x[i][k - 1];
        const int pv = k == 0 ? v.pi0 : v.pi[k - 1];
        const double d = delay_of(inst, i, k);
        const double rc = d * (1.0 + (worst ? val[v.mu] : 0.0)) + val[pv] - val[v.sigma[i]];
        worst_product = std::max(worst_product, std::max(0.0, val[xv]) * std::max(0.0, rc));
        x_zero[i][k] = (k == 0 ? val[v.u0[i]] : val[v.u1[i][k - 1]]) > 0.5;
      }
    }
    std::vector<double> lambda(M), t(M);
    for (int i = 0; i < M; ++i) {
      t[i] = std::clamp(val[v.t[i]], 0.0, 1.0);
      lambda[i] = u.forecast[i] + t[i] * u.deviation[i];
    }
    for (int k = 0; k <= N; ++k) {
      const int pv = k == 0 ? v.pi0 : v.pi[k - 1];
      double load = 0.0;
      for (int i = 0; i < M; ++i) load += val[k == 0 ? v.x0[i] : v.x[i][k - 1]];
      const double slack = (k == 0 ? r.bigm.cloud : r.bigm.edge[k - 1]) - load;
      worst_product = std::max(worst_product, std::max(0.0, slack) * std::max(0.0, val[pv]));
      pi_zero[k] = (k == 0 ? val[v.u2] : val[v.u3[k - 1]]) > 0.5;
    }
    bool mu_zero = true;
    if (worst) {
      double delay = 0.0;
      for (int i = 0; i < M; ++i) {
        delay += inst.delay_cloud[i] * val[v.x0[i]];
        for (int j = 0; j < N; ++j) delay += inst.delay_edge[i][j] * val[v.x[i][j]];
      }
      const double slack = inst.delay_cap * std::accumulate(lambda.begin(), lambda.end(), 0.0) - delay;
      worst_product = std::max(worst_product, std::max(0.0, slack) * std::max(0.0, val[v.mu]));
      mu_zero = val[v.u4] > 0.5;
    }
    double scale = cap;
    for (double f : r.bigm.flow) scale = std::max(scale, f * cap);
    scale = std::max({scale, r.bigm.cloud * cap, r.bigm.delay * cap});
    if (worst_product > 1e-6 * scale) {
      throw SolverError("subproblem complementarity audit failed (product " +
                        std::to_string(worst_product) + ")");
    }
    r.max_complementarity = worst_product;

    // dual-cap validation on the smallest certificate for this pattern
    const Duals dm = minimal_duals(inst, x_zero, pi_zero, mu_zero, worst);
    double largest = dm.mu;
    for (double p : dm.pi) largest = std::max(largest, p);
    for (double sg : dm.sigma) largest = std::max(largest, sg);
    for (int i = 0; i < M; ++i) {
      for (int k = 0; k <= N; ++k) {
        largest = std::max(largest, delay_of(inst, i, k) * (1.0 + dm.mu) + dm.pi[k] - dm.sigma[i]);
      }
    }
    if (largest >= 0.99 * cap) {
      if (r.escalations >= options.max_escalations) {
        throw SolverError("subproblem dual cap still active after escalation");
      }
      r.bigm.dual_cap *= 10.0;
      continue;
    }

    // KKT value against a direct LP solve at λ*
    const double kkt_value = s.objective;
    InnerEval e = evaluate(inst, u, y, t, kind);
    if (e.lp.status != solver::SolveStatus::kOptimal) {
      throw SolverError("inner LP infeasible at the subproblem's worst demand");
    }
    const double denom = std::max({1.0, std::fabs(kkt_value), std::fabs(e.value)});
    if (std::fabs(e.value - kkt_value) > options.audit_tol * denom) {
      throw SolverError("subproblem KKT value " + std::to_string(kkt_value) +
                        " disagrees with the inner LP " + std::to_string(e.value));
    }

    Duals duals = dm;
    if (!has_extreme_structure(t, u.gamma)) {
      r.purified = purify(inst, u, y, t, kind) > 0;
      e = evaluate(inst, u, y, t, kind);
      if (e.lp.status != solver::SolveStatus::kOptimal) {
        // the better endpoint has no feasible second stage
        r.feasible = false;
        r.worst_demand = u.at(t);
        break;
      }
      duals = lp_duals(e, N);
    }

    r.worst_demand = u.at(t);
    std::vector<double> x0(M);
    std::vector<std::vector<double>> x(M, std::vector<double>(N));
    for (int i = 0; i < M; ++i) {
      x0[i] = std::max(0.0, e.lp.values[e.model.x0[i]]);
      for (int j = 0; j < N; ++j) x[i][j] = std::max(0.0, e.lp.values[e.model.x[i][j]]);
    }
    r.allocation = make_allocation(inst, x0, x, r.worst_demand.total());
    r.objective = worst ? inst.beta * e.value : e.value;

    const double to_price = inst.beta / inst.unit_demand;
    r.pi0 = to_price * duals.pi[0];
    r.pi.clear();
    for (int j = 1; j <= N; ++j) r.pi.push_back(to_price * duals.pi[j]);
    r.mu = inst.beta * duals.mu;
    r.sigma.clear();
    for (double sg : duals.sigma) r.sigma.push_back(inst.beta * sg);
    r.u0.assign(M, 0);
    r.u1.assign(M, std::vector<int>(N, 0));
    for (int i = 0; i < M; ++i) {
      r.u0[i] = x0[i] <= 1e-9 ? 1 : 0;
      for (int j = 0; j < N; ++j) r.u1[i][j] = x[i][j] <= 1e-9 ? 1 : 0;
    }
    r.u2 = duals.pi[0] <= 1e-12 ? 1 : 0;
    r.u3.clear();
    for (int j = 1; j <= N; ++j) r.u3.push_back(duals.pi[j] <= 1e-12 ? 1 : 0);
    r.u4 = duals.mu <= 1e-12 ? 1 : 0;
    break;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace edgerobust
