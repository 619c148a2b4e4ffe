#include "formulation.hpp"

namespace edgerobust::detail {

using solver::MilpModel;
using solver::Relation;
using solver::Term;

FirstStageVars add_first_stage(MilpModel& m, const Instance& inst, const BuildFlags& flags) {
  FirstStageVars fs;
  const int n = inst.n_ens;
  for (int j = 0; j < n; ++j) {
    fs.z.push_back(m.add_binary("z_" + std::to_string(j), inst.placement_weight(j)));
  }
  fs.y0 = m.add_variable("y_0", 0.0, solver::kInfinity, inst.price_cloud);
  for (int j = 0; j < n; ++j) {
    fs.y.push_back(m.add_variable("y_" + std::to_string(j + 1), 0.0, inst.capacity[j],
                                  inst.price_edge[j]));
  }
  if (flags.r_min && inst.r_min > 0) {
    std::vector<Term> t;
    for (int j = 0; j < n; ++j) t.push_back({fs.z[j], 1.0});
    m.add_constraint(t, Relation::kGreaterEqual, inst.r_min, "r_min");
  }
  if (flags.budget) {
    std::vector<Term> t;
    for (int j = 0; j < n; ++j) t.push_back({fs.z[j], inst.placement_weight(j)});
    t.push_back({fs.y0, inst.price_cloud});
    for (int j = 0; j < n; ++j) t.push_back({fs.y[j], inst.price_edge[j]});
    m.add_constraint(t, Relation::kLessEqual, inst.budget, "budget");
  }
  for (int j = 0; j < n; ++j) {
    m.add_constraint({{fs.y[j], 1.0}, {fs.z[j], -inst.capacity[j]}}, Relation::kLessEqual, 0.0,
                     "open_" + std::to_string(j + 1));
  }
  return fs;
}

AllocationVars add_allocation(MilpModel& m, const Instance& inst, const FirstStageVars& fs,
                              const std::vector<double>& lambda, Relation flow,
                              double delay_weight, double delay_rhs, const std::string& tag,
                              const BuildFlags& flags) {
  AllocationVars a;
  const int M = inst.m_aps;
  const int N = inst.n_ens;
  a.x0.resize(M);
  a.x.assign(M, std::vector<int>(N));
  for (int i = 0; i < M; ++i) {
    a.x0[i] = m.add_variable("x" + tag + "_" + std::to_string(i) + "_0", 0.0, solver::kInfinity,
                             delay_weight * inst.delay_cloud[i]);
    for (int j = 0; j < N; ++j) {
      a.x[i][j] = m.add_variable(
          "x" + tag + "_" + std::to_string(i) + "_" + std::to_string(j + 1), 0.0,
          solver::kInfinity, delay_weight * inst.delay_edge[i][j]);
    }
  }
  for (int i = 0; i < M; ++i) {
    std::vector<Term> t{{a.x0[i], 1.0}};
    for (int j = 0; j < N; ++j) t.push_back({a.x[i][j], 1.0});
    m.add_constraint(t, flow, lambda[i], "flow" + tag + "_" + std::to_string(i));
  }
  {
    std::vector<Term> t;
    for (int i = 0; i < M; ++i) t.push_back({a.x0[i], inst.unit_demand});
    t.push_back({fs.y0, -1.0});
    m.add_constraint(t, Relation::kLessEqual, 0.0, "cap" + tag + "_0");
  }
  for (int j = 0; j < N; ++j) {
    std::vector<Term> t;
    for (int i = 0; i < M; ++i) t.push_back({a.x[i][j], inst.unit_demand});
    t.push_back({fs.y[j], -1.0});
    m.add_constraint(t, Relation::kLessEqual, 0.0, "cap" + tag + "_" + std::to_string(j + 1));
  }
  if (flags.delay_cap) {
    a.delay_row = m.add_constraint(delay_terms(inst, a), Relation::kLessEqual, delay_rhs,
                                   "delay" + tag);
  }
  return a;
}

std::vector<Term> delay_terms(const Instance& inst, const AllocationVars& a, double scale) {
  std::vector<Term> t;
  for (int i = 0; i < inst.m_aps; ++i) {
    t.push_back({a.x0[i], scale * inst.delay_cloud[i]});
    for (int j = 0; j < inst.n_ens; ++j) t.push_back({a.x[i][j], scale * inst.delay_edge[i][j]});
  }
  return t;
}

FirstStagePlan read_plan(const Instance& inst, const FirstStageVars& fs,
                         const std::vector<double>& values) {
  std::vector<double> z(inst.n_ens), y(inst.n_ens);
  for (int j = 0; j < inst.n_ens; ++j) {
    z[j] = values[fs.z[j]];
    y[j] = values[fs.y[j]];
  }
  return make_plan(inst, z, values[fs.y0], y);
}

Allocation read_allocation(const Instance& inst, const AllocationVars& a,
                           const std::vector<double>& values, double demand_total) {
  std::vector<double> x0(inst.m_aps);
  std::vector<std::vector<double>> x(inst.m_aps, std::vector<double>(inst.n_ens));
  for (int i = 0; i < inst.m_aps; ++i) {
    x0[i] = std::max(0.0, values[a.x0[i]]);
    for (int j = 0; j < inst.n_ens; ++j) x[i][j] = std::max(0.0, values[a.x[i][j]]);
  }
  return make_allocation(inst, std::move(x0), std::move(x), demand_total);
}

}  // namespace edgerobust::detail
