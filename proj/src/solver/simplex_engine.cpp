#include "simplex_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "edgerobust/error.hpp"

namespace edgerobust::solver::detail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRefreshPeriod = 100;
constexpr int kDegenerateBeforeBland = 50;

}  // namespace

SimplexEngine::SimplexEngine(StandardForm form, const LpOptions& options)
    : m_(form.rows), n_(form.cols), opt_(options), form_(std::move(form)) {
  lower_ = form_.lower;
  upper_ = form_.upper;
  cost_.assign(n_ + m_, 0.0);
  std::copy(form_.cost.begin(), form_.cost.end(), cost_.begin());
  reset_to_slack_basis();
}

void SimplexEngine::reset_to_slack_basis() {
  t_ = form_.a;
  rhs_ = form_.rhs;
  head_.resize(m_);
  nonbasic_.resize(n_);
  where_.assign(n_ + m_, 0);
  state_.assign(n_ + m_, VarState::kAtLower);
  value_.assign(n_ + m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    head_[r] = n_ + r;
    where_[n_ + r] = r;
    state_[n_ + r] = VarState::kBasic;
  }
  for (int k = 0; k < n_; ++k) {
    nonbasic_[k] = k;
    where_[k] = k;
    place_nonbasic(k, VarState::kAtLower);
  }
  recompute_basic_values();
  compute_reduced_costs(cost_);
}

void SimplexEngine::place_nonbasic(int var, VarState preferred) {
  const double lo = lower_[var];
  const double hi = upper_[var];
  VarState s = preferred;
  if (s == VarState::kAtLower && !std::isfinite(lo)) s = VarState::kAtUpper;
  if (s == VarState::kAtUpper && !std::isfinite(hi)) s = VarState::kAtLower;
  if (s == VarState::kAtLower && !std::isfinite(lo)) s = VarState::kFree;
  if (s == VarState::kFree) {
    if (std::isfinite(lo)) s = VarState::kAtLower;
    else if (std::isfinite(hi)) s = VarState::kAtUpper;
  }
  state_[var] = s;
  value_[var] = s == VarState::kAtLower ? lo : s == VarState::kAtUpper ? hi : 0.0;
}

void SimplexEngine::recompute_basic_values() {
  for (int r = 0; r < m_; ++r) {
    const double* row = &t_[static_cast<size_t>(r) * n_];
    double v = rhs_[r];
    for (int k = 0; k < n_; ++k) {
      const double x = value_[nonbasic_[k]];
      if (x != 0.0) v -= row[k] * x;
    }
    value_[head_[r]] = v;
  }
  since_refresh_ = 0;
}

void SimplexEngine::compute_reduced_costs(const std::vector<double>& costs) {
  d_.assign(n_, 0.0);
  for (int k = 0; k < n_; ++k) d_[k] = costs[nonbasic_[k]];
  for (int r = 0; r < m_; ++r) {
    const double cb = costs[head_[r]];
    if (cb == 0.0) continue;
    const double* row = &t_[static_cast<size_t>(r) * n_];
    for (int k = 0; k < n_; ++k) d_[k] -= cb * row[k];
  }
}

void SimplexEngine::pivot(int r, int s) {
  double* prow = &t_[static_cast<size_t>(r) * n_];
  const double inv = 1.0 / prow[s];
  for (int k = 0; k < n_; ++k) prow[k] *= inv;
  prow[s] = inv;
  rhs_[r] *= inv;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &t_[static_cast<size_t>(i) * n_];
    const double f = row[s];
    if (f == 0.0) continue;
    for (int k = 0; k < n_; ++k) row[k] -= f * prow[k];
    row[s] = -f * inv;
    rhs_[i] -= f * rhs_[r];
  }
  const double f = d_[s];
  if (f != 0.0) {
    for (int k = 0; k < n_; ++k) d_[k] -= f * prow[k];
    d_[s] = -f * inv;
  }
  const int entering = nonbasic_[s];
  const int leaving = head_[r];
  head_[r] = entering;
  nonbasic_[s] = leaving;
  where_[entering] = r;
  where_[leaving] = s;
  state_[entering] = VarState::kBasic;
  ++iterations_;
}

void SimplexEngine::apply_step(int s, double delta) {
  if (delta == 0.0) return;
  value_[nonbasic_[s]] += delta;
  for (int r = 0; r < m_; ++r) {
    const double a = tab(r, s);
    if (a != 0.0) value_[head_[r]] -= a * delta;
  }
}

double SimplexEngine::infeasibility(int var) const {
  const double v = value_[var];
  const double lo = lower_[var];
  const double hi = upper_[var];
  if (v < lo - opt_.feasibility_tol * (1.0 + std::abs(lo))) return lo - v;
  if (v > hi + opt_.feasibility_tol * (1.0 + std::abs(hi))) return v - hi;
  return 0.0;
}

bool SimplexEngine::is_infeasible(int var) const { return infeasibility(var) > 0.0; }

bool SimplexEngine::dual_feasible() const {
  const double tol = opt_.optimality_tol * 10.0;
  for (int k = 0; k < n_; ++k) {
    const int var = nonbasic_[k];
    if (lower_[var] == upper_[var]) continue;
    switch (state_[var]) {
      case VarState::kAtLower: if (d_[k] < -tol) return false; break;
      case VarState::kAtUpper: if (d_[k] > tol) return false; break;
      case VarState::kFree: if (std::abs(d_[k]) > tol) return false; break;
      case VarState::kBasic: break;
    }
  }
  return true;
}

void SimplexEngine::set_bounds(int var, double lower, double upper) {
  lower_[var] = lower;
  upper_[var] = upper;
  if (state_[var] == VarState::kBasic) return;
  const double old = value_[var];
  VarState pref = state_[var];
  if (pref == VarState::kFree) pref = VarState::kAtLower;
  place_nonbasic(var, pref);
  const double moved = value_[var];
  value_[var] = old;
  apply_step(where_[var], moved - old);
  value_[var] = moved;
}

SimplexEngine::Result SimplexEngine::primal_loop(bool phase_one) {
  std::vector<double> phase_costs;
  Rule rule = Rule::kDantzig;
  int degenerate = 0;
  while (true) {
    if (iterations_ >= limit_) return Result::kIterationLimit;
    if (++since_refresh_ >= kRefreshPeriod) {
      recompute_basic_values();
      if (!phase_one) compute_reduced_costs(cost_);
    }
    if (phase_one) {
      phase_costs.assign(n_ + m_, 0.0);
      bool any = false;
      for (int r = 0; r < m_; ++r) {
        const int var = head_[r];
        if (!is_infeasible(var)) continue;
        any = true;
        phase_costs[var] = value_[var] < lower_[var] ? -1.0 : 1.0;
      }
      if (!any) return Result::kOptimal;
      compute_reduced_costs(phase_costs);
    }

    const double tol = opt_.optimality_tol;
    int s = -1;
    int dir = 0;
    double best = 0.0;
    for (int k = 0; k < n_; ++k) {
      const int var = nonbasic_[k];
      if (lower_[var] == upper_[var]) continue;
      int kdir = 0;
      switch (state_[var]) {
        case VarState::kAtLower: if (d_[k] < -tol) kdir = 1; break;
        case VarState::kAtUpper: if (d_[k] > tol) kdir = -1; break;
        case VarState::kFree:
          if (std::abs(d_[k]) > tol) kdir = d_[k] < 0 ? 1 : -1;
          break;
        case VarState::kBasic: break;
      }
      if (kdir == 0) continue;
      if (rule == Rule::kBland) {
        if (s < 0 || var < nonbasic_[s]) {
          s = k;
          dir = kdir;
        }
      } else if (std::abs(d_[k]) > best) {
        best = std::abs(d_[k]);
        s = k;
        dir = kdir;
      }
    }
    if (s < 0) {
      if (phase_one) return Result::kInfeasible;
      return Result::kOptimal;
    }

    const int entering = nonbasic_[s];
    double theta = upper_[entering] - lower_[entering];
    if (!std::isfinite(theta)) theta = kInf;
    int leave = -1;
    bool leave_to_upper = false;
    double leave_pivot = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double a = tab(r, s);
      if (std::abs(a) < opt_.pivot_tol) continue;
      const double rate = -a * dir;
      const int var = head_[r];
      const double v = value_[var];
      const double lo = lower_[var];
      const double hi = upper_[var];
      double lim;
      bool to_upper;
      if (phase_one && is_infeasible(var)) {
        if (v < lo) {
          if (rate <= 0) continue;
          lim = (lo - v) / rate;
          to_upper = false;
        } else {
          if (rate >= 0) continue;
          lim = (hi - v) / rate;
          to_upper = true;
        }
      } else if (rate > 0) {
        if (!std::isfinite(hi)) continue;
        lim = std::max(0.0, (hi - v) / rate);
        to_upper = true;
      } else {
        if (!std::isfinite(lo)) continue;
        lim = std::max(0.0, (lo - v) / rate);
        to_upper = false;
      }
      bool take = false;
      if (lim < theta - 1e-12 * (1.0 + theta)) {
        take = true;
      } else if (lim <= theta + 1e-12 * (1.0 + theta) && leave >= 0) {
        take = rule == Rule::kBland ? var < head_[leave]
                                    : std::abs(a) > std::abs(leave_pivot);
      } else if (leave < 0 && lim <= theta) {
        take = true;
      }
      if (take) {
        theta = lim;
        leave = r;
        leave_to_upper = to_upper;
        leave_pivot = a;
      }
    }
    if (!std::isfinite(theta)) {
      if (phase_one) throw SolverError("phase 1 ratio test unbounded");
      return Result::kUnbounded;
    }

    if (theta <= 1e-12) {
      if (++degenerate >= kDegenerateBeforeBland) rule = Rule::kBland;
    } else {
      degenerate = 0;
      rule = Rule::kDantzig;
    }

    apply_step(s, dir * theta);
    if (leave < 0) {
      state_[entering] = dir > 0 ? VarState::kAtUpper : VarState::kAtLower;
      value_[entering] = dir > 0 ? upper_[entering] : lower_[entering];
      ++iterations_;
      continue;
    }
    const int leaving = head_[leave];
    pivot(leave, s);
    state_[leaving] = leave_to_upper ? VarState::kAtUpper : VarState::kAtLower;
    value_[leaving] = leave_to_upper ? upper_[leaving] : lower_[leaving];
  }
}

SimplexEngine::Result SimplexEngine::solve_primal() {
  limit_ = iterations_ + opt_.max_iterations;
  recompute_basic_values();
  Result r = primal_loop(true);
  if (r != Result::kOptimal) return r;
  compute_reduced_costs(cost_);
  r = primal_loop(false);
  if (r != Result::kOptimal) return r;
  // Confirm primal feasibility after drift.
  recompute_basic_values();
  for (int i = 0; i < m_; ++i) {
    if (infeasibility(head_[i]) > 1e-6 * (1.0 + std::abs(value_[head_[i]]))) {
      r = primal_loop(true);
      if (r != Result::kOptimal) return r;
      compute_reduced_costs(cost_);
      return primal_loop(false);
    }
  }
  return r;
}

SimplexEngine::Result SimplexEngine::dual_loop() {
  const double ptol = opt_.pivot_tol;
  int64_t start = iterations_;
  while (true) {
    if (iterations_ >= limit_) return Result::kIterationLimit;
    if (iterations_ - start > 50 * (m_ + n_) + 1000) return Result::kIterationLimit;
    if (++since_refresh_ >= kRefreshPeriod) {
      recompute_basic_values();
      compute_reduced_costs(cost_);
    }
    int r = -1;
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double inf = infeasibility(head_[i]);
      if (inf > worst) {
        worst = inf;
        r = i;
      }
    }
    if (r < 0) return Result::kOptimal;
    const int var = head_[r];
    const bool increase = value_[var] < lower_[var];
    const double target = increase ? lower_[var] : upper_[var];

    int s = -1;
    double best_ratio = kInf;
    double best_alpha = 0.0;
    for (int k = 0; k < n_; ++k) {
      const int nb = nonbasic_[k];
      if (lower_[nb] == upper_[nb]) continue;
      const double alpha = tab(r, k);
      if (std::abs(alpha) < ptol) continue;
      bool ok = false;
      switch (state_[nb]) {
        case VarState::kAtLower: ok = increase ? alpha < 0 : alpha > 0; break;
        case VarState::kAtUpper: ok = increase ? alpha > 0 : alpha < 0; break;
        case VarState::kFree: ok = true; break;
        case VarState::kBasic: break;
      }
      if (!ok) continue;
      const double ratio = std::abs(d_[k]) / std::abs(alpha);
      if (ratio < best_ratio - 1e-12 ||
          (ratio <= best_ratio + 1e-12 && std::abs(alpha) > std::abs(best_alpha))) {
        best_ratio = ratio;
        best_alpha = alpha;
        s = k;
      }
    }
    if (s < 0) return Result::kInfeasible;
    const double delta = (value_[var] - target) / tab(r, s);
    apply_step(s, delta);
    pivot(r, s);
    state_[var] = increase ? VarState::kAtLower : VarState::kAtUpper;
    value_[var] = target;
  }
}

SimplexEngine::Result SimplexEngine::reoptimize() {
  limit_ = iterations_ + opt_.max_iterations;
  recompute_basic_values();
  compute_reduced_costs(cost_);
  if (!dual_feasible()) return solve_primal();
  Result r = dual_loop();
  if (r == Result::kInfeasible) {
    // Confirm with a fresh phase 1 to guard against a numerically bad row.
    recompute_basic_values();
    return primal_loop(true) == Result::kInfeasible ? Result::kInfeasible
                                                   : solve_primal();
  }
  if (r == Result::kIterationLimit) return solve_primal();
  compute_reduced_costs(cost_);
  return solve_primal();
}

double SimplexEngine::objective() const {
  double z = 0.0;
  for (int j = 0; j < n_; ++j) z += cost_[j] * value_[j];
  return z;
}

double SimplexEngine::reduced_cost(int var) const {
  if (state_[var] == VarState::kBasic) return 0.0;
  return d_[where_[var]];
}

std::vector<double> SimplexEngine::row_duals() const {
  std::vector<double> y(m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    const int var = n_ + r;
    if (state_[var] != VarState::kBasic) y[r] = -d_[where_[var]];
  }
  return y;
}

Basis SimplexEngine::basis() const { return {head_, state_}; }

void SimplexEngine::load_basis(const Basis& basis) {
  t_ = form_.a;
  rhs_ = form_.rhs;
  for (int r = 0; r < m_; ++r) {
    head_[r] = n_ + r;
    where_[n_ + r] = r;
    state_[n_ + r] = VarState::kBasic;
  }
  for (int k = 0; k < n_; ++k) {
    nonbasic_[k] = k;
    where_[k] = k;
    state_[k] = VarState::kAtLower;
  }
  d_.assign(n_, 0.0);
  std::vector<char> wanted(n_ + m_, 0);
  for (int v : basis.basic) wanted[v] = 1;
  for (int v : basis.basic) {
    if (v >= n_) continue;  // slack: already basic in its own row
    const int s = where_[v];
    int best = -1;
    double best_abs = 1e-7;
    for (int r = 0; r < m_; ++r) {
      const int h = head_[r];
      if (h < n_ || wanted[h]) continue;
      const double a = std::abs(tab(r, s));
      if (a > best_abs) {
        best_abs = a;
        best = r;
      }
    }
    if (best >= 0) pivot(best, s);
  }
  for (int k = 0; k < n_; ++k) {
    const int var = nonbasic_[k];
    VarState pref = basis.state[var];
    if (pref == VarState::kBasic) pref = VarState::kAtLower;
    place_nonbasic(var, pref);
  }
  recompute_basic_values();
  compute_reduced_costs(cost_);
}

}  // namespace edgerobust::solver::detail
