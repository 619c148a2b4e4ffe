#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "edgerobust/aro_ccg.hpp"
#include "edgerobust/instance.hpp"
#include "edgerobust/solver/model.hpp"
#include "edgerobust/solver/solve.hpp"
#include "edgerobust/uncertainty.hpp"

namespace edgerobust::oracle {

// Feasible, bounded LP built around a random interior point.
inline solver::MilpModel random_lp(int seed) {
  using namespace solver;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 4 + seed % 7;
  const int rows = 3 + seed % 6;
  MilpModel m(seed % 2 ? Sense::kMaximize : Sense::kMinimize);
  std::vector<double> x0(n);
  for (int j = 0; j < n; ++j) {
    x0[j] = 2.0 * (u(rng) + 1.0);
    m.add_variable("x" + std::to_string(j), 0.0, 5.0 + 5.0 * (u(rng) + 1.0), u(rng) * 1000.0);
  }
  for (int i = 0; i < rows; ++i) {
    std::vector<Term> terms;
    double act = 0.0;
    for (int j = 0; j < n; ++j) {
      if (u(rng) < -0.3) continue;
      const double a = u(rng) * std::pow(10.0, 3.0 * u(rng));
      terms.push_back({j, a});
      act += a * x0[j];
    }
    const int kind = i % 3;
    const Relation rel = kind == 0 ? Relation::kLessEqual
                         : kind == 1 ? Relation::kGreaterEqual : Relation::kEqual;
    double rhs = act;
    if (rel == Relation::kLessEqual) rhs += std::abs(u(rng));
    if (rel == Relation::kGreaterEqual) rhs -= std::abs(u(rng));
    m.add_constraint(terms, rel, rhs, "r" + std::to_string(i));
  }
  return m;
}

// MILP with `3 + seed % 10` binaries (at most 12) and a few bounded
// continuous columns.
inline solver::MilpModel random_milp(int seed) {
  using namespace solver;
  std::mt19937_64 rng(1000 + seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int nb = 3 + seed % 10;
  const int nc = 2 + seed % 3;
  const int rows = 3 + seed % 4;
  MilpModel m;
  for (int j = 0; j < nb; ++j) m.add_binary("z" + std::to_string(j), 10.0 * u(rng) - 3.0);
  for (int j = 0; j < nc; ++j) m.add_variable("y" + std::to_string(j), 0, 10, 5.0 * u(rng) - 2.0);
  const int n = nb + nc;
  for (int i = 0; i < rows; ++i) {
    std::vector<Term> terms;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = 10.0 * u(rng) - 3.0;
      terms.push_back({j, a});
      sum += std::max(0.0, a);
    }
    m.add_constraint(terms, i % 2 ? Relation::kGreaterEqual : Relation::kLessEqual,
                     i % 2 ? -0.2 * sum : 0.4 * sum, "r" + std::to_string(i));
  }
  return m;
}

// |primal − (Σ y_i b_i + Σ d_j x_j + offset)| / (1 + |primal|), with d the
// reported reduced costs: zero exactly when the duals certify optimality.
inline double duality_residual(const solver::MilpModel& m, const solver::LpSolution& s) {
  double dual_obj = m.objective_offset();
  for (int i = 0; i < m.num_constraints(); ++i) dual_obj += s.duals[i] * m.constraint(i).rhs;
  for (int j = 0; j < m.num_variables(); ++j) {
    double d = m.variable(j).objective;
    for (int i = 0; i < m.num_constraints(); ++i) {
      for (const auto& t : m.constraint(i).terms) {
        if (t.var == j) d -= s.duals[i] * t.coef;
      }
    }
    dual_obj += d * s.values[j];
  }
  return std::abs(s.objective - dual_obj) / (1.0 + std::abs(s.objective));
}

struct EnumerationResult {
  bool feasible = false;
  double objective = 0.0;
  double worst_residual = 0.0;  // over every LP solved
};

// Every assignment of the binary columns, continuous part by LP.
inline EnumerationResult enumerate_binaries(const solver::MilpModel& m) {
  using namespace solver;
  std::vector<int> bins;
  for (int j = 0; j < m.num_variables(); ++j) {
    if (m.variable(j).integer) bins.push_back(j);
  }
  const bool maximize = m.sense() == Sense::kMaximize;
  EnumerationResult r;
  for (long mask = 0; mask < (1L << bins.size()); ++mask) {
    MilpModel fixed(m.sense());
    for (int j = 0; j < m.num_variables(); ++j) {
      const auto& v = m.variable(j);
      fixed.add_variable(v.name, v.lower, v.upper, v.objective);
    }
    for (size_t b = 0; b < bins.size(); ++b) {
      const double val = (mask >> b) & 1;
      fixed.add_constraint({{bins[b], 1.0}}, Relation::kEqual, val, "fix");
    }
    for (const auto& c : m.constraints()) fixed.add_constraint(c.terms, c.relation, c.rhs, c.name);
    fixed.set_objective_offset(m.objective_offset());
    const LpSolution s = solve_lp(fixed);
    if (s.status != SolveStatus::kOptimal) continue;
    r.worst_residual = std::max(r.worst_residual, duality_residual(fixed, s));
    if (!r.feasible || (maximize ? s.objective > r.objective : s.objective < r.objective)) {
      r.objective = s.objective;
    }
    r.feasible = true;
  }
  return r;
}

// One AP, one EN, w = 1: λ = 10, p0 = 0.03, p1 = 0.05, h1 = 0.3, d = (80, 5),
// β = 0.01. Its optimum places the EN, buys y1 = 10 and costs 1.3.
inline Instance hand_instance() {
  Instance inst;
  inst.m_aps = 1;
  inst.n_ens = 1;
  inst.delay_cloud = {80.0};
  inst.delay_edge = {{5.0}};
  inst.capacity = {100.0};
  inst.price_cloud = 0.03;
  inst.price_edge = {0.05};
  inst.install_cost = {0.2};
  inst.storage_cost = {0.1};
  inst.initial_placement = {0};
  inst.budget = 100.0;
  inst.r_min = 1;
  inst.delay_cap = 30.0;
  inst.unit_demand = 1.0;
  inst.beta = 0.01;
  inst.forecast = {10.0};
  return inst;
}

// Small instance for oracle comparisons: M APs, N ENs on the default topology.
inline Instance small_instance(int m, int n, uint64_t seed) {
  GeneratorParams p;
  p.m_aps = m;
  p.n_ens = n;
  p.r_min = std::min(p.r_min, n);
  return generate_instance(p, seed);
}

// max over every vertex of D of β · inner optimum; +inf if some vertex has no
// feasible second stage.
inline double vertex_max_inner(const Instance& inst, const UncertaintySet& u, const Sizing& y) {
  double best = 0.0;
  for (const auto& v : enumerate_extreme_points(u)) {
    const InnerResult r = solve_inner(inst, y, v.lambda);
    if (!r.feasible) return solver::kInfinity;
    best = std::max(best, r.objective);
  }
  return best;
}

// Random sizing vector that covers w·max Σλ; feasibility of the delay cap at
// every vertex is left to the caller.
inline Sizing random_sizing(const Instance& inst, const UncertaintySet& u, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double need = inst.unit_demand * u.max_total_demand();
  Sizing y(inst.n_ens + 1);
  double total = 0.0;
  for (int j = 1; j <= inst.n_ens; ++j) {
    y[j] = std::min(inst.capacity[j - 1], need * unit(rng));
    total += y[j];
  }
  y[0] = std::max(0.0, need - total) + need * 0.3 * unit(rng);
  return y;
}

inline double relative_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12});
}

}  // namespace edgerobust::oracle
