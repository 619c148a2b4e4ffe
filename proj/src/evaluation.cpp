#include "edgerobust/evaluation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "edgerobust/error.hpp"
#include "edgerobust/solver/solve.hpp"

namespace edgerobust {

using solver::Relation;
using solver::Term;

OperationResult operation_stage(const Instance& inst, const FirstStagePlan& plan,
                                const DemandScenario& demand, double v_p) {
  const int M = inst.m_aps;
  const int N = inst.n_ens;
  if (static_cast<int>(demand.lambda.size()) != M) throw ConfigError("demand length differs from M");
  if (!(v_p >= 0.0)) throw ConfigError("drop penalty must be nonnegative");
  const double total = demand.total();

  // Delay in request·ms and drops in requests; β and v^p/Σλ weight them.
  solver::MilpModel m;
  std::vector<int> x0(M), xd(M);
  std::vector<std::vector<int>> x(M, std::vector<int>(N));
  const double drop_weight = total > 0.0 ? v_p / total : 0.0;
  for (int i = 0; i < M; ++i) {
    if (!(demand.lambda[i] >= 0.0)) throw ConfigError("demand must be nonnegative");
    x0[i] = m.add_variable("x_" + std::to_string(i) + "_0", 0.0, solver::kInfinity,
                           inst.beta * inst.delay_cloud[i]);
    for (int j = 0; j < N; ++j) {
      x[i][j] = m.add_variable("x_" + std::to_string(i) + "_" + std::to_string(j + 1), 0.0,
                               solver::kInfinity, inst.beta * inst.delay_edge[i][j]);
    }
    xd[i] = m.add_variable("x_" + std::to_string(i) + "_D", 0.0, solver::kInfinity, drop_weight);
  }
  for (int i = 0; i < M; ++i) {
    std::vector<Term> t{{x0[i], 1.0}, {xd[i], 1.0}};
    for (int j = 0; j < N; ++j) t.push_back({x[i][j], 1.0});
    m.add_constraint(t, Relation::kEqual, demand.lambda[i], "flow_" + std::to_string(i));
  }
  for (int k = 0; k <= N; ++k) {
    std::vector<Term> t;
    for (int i = 0; i < M; ++i) t.push_back({k == 0 ? x0[i] : x[i][k - 1], 1.0});
    const double y = k == 0 ? plan.size_cloud : plan.size_edge[k - 1];
    m.add_constraint(t, Relation::kLessEqual, std::max(0.0, y) / inst.unit_demand,
                     "cap_" + std::to_string(k));
  }
  {
    std::vector<Term> t;
    for (int i = 0; i < M; ++i) {
      t.push_back({x0[i], inst.delay_cloud[i] - inst.delay_cap});
      for (int j = 0; j < N; ++j) t.push_back({x[i][j], inst.delay_edge[i][j] - inst.delay_cap});
    }
    m.add_constraint(t, Relation::kLessEqual, 0.0, "delay_served");
  }
  const solver::LpSolution s = solver::solve_lp(m);
  if (s.status != solver::SolveStatus::kOptimal) throw SolverError("operation-stage LP not solved");

  OperationResult r;
  std::vector<double> v0(M);
  std::vector<std::vector<double>> v(M, std::vector<double>(N));
  r.dropped.resize(M);
  double dropped = 0.0;
  for (int i = 0; i < M; ++i) {
    v0[i] = std::max(0.0, s.values[x0[i]]);
    for (int j = 0; j < N; ++j) v[i][j] = std::max(0.0, s.values[x[i][j]]);
    r.dropped[i] = std::max(0.0, s.values[xd[i]]);
    dropped += r.dropped[i];
  }
  r.allocation = make_allocation(inst, std::move(v0), std::move(v), total - dropped);
  r.drop_ratio = total > 0.0 ? std::clamp(dropped / total, 0.0, 1.0) : 0.0;
  r.delay_cost = inst.beta * r.allocation.total_delay;
  r.realized_cost = r.delay_cost + v_p * r.drop_ratio;
  r.second_stage_objective = s.objective;
  return r;
}

const MethodReport& ComparisonReport::at(const std::string& method) const {
  for (const auto& m : methods) {
    if (m.method == method) return m;
  }
  throw ConfigError("no method '" + method + "' in the report");
}

ComparisonReport evaluate_methods(const Instance& inst, const UncertaintySet& u,
                                  const std::vector<MethodPlan>& plans, int n_test, double v_p,
                                  uint64_t seed) {
  if (n_test < 1) throw ConfigError("n_test must be at least 1");
  if (u.size() != inst.m_aps) throw ConfigError("uncertainty set size differs from the number of APs");
  const std::vector<DemandScenario> tests = sample_scenarios(u, n_test, seed);
  ComparisonReport rep;
  rep.n_test = n_test;
  rep.v_p = v_p;
  rep.seed = seed;
  for (const auto& mp : plans) {
    MethodReport r;
    r.method = mp.method;
    r.model_objective = mp.model_objective;
    r.first_stage_cost = mp.plan.cost();
    double sum = 0.0, drops = 0.0;
    for (const auto& d : tests) {
      const OperationResult op = operation_stage(inst, mp.plan, d, v_p);
      sum += op.realized_cost;
      drops += op.drop_ratio;
      r.worst_second_stage = std::max(r.worst_second_stage, op.realized_cost);
      r.max_drop_ratio = std::max(r.max_drop_ratio, op.drop_ratio);
      r.realized_total.push_back(r.first_stage_cost + op.realized_cost);
    }
    r.mean_second_stage = sum / n_test;
    r.mean_drop_ratio = drops / n_test;
    r.total_average = r.first_stage_cost + r.mean_second_stage;
    r.total_worst = r.first_stage_cost + r.worst_second_stage;
    rep.methods.push_back(std::move(r));
  }
  return rep;
}

std::string report_to_json(const ComparisonReport& report) {
  nlohmann::json j;
  j["n_test"] = report.n_test;
  j["v_p"] = report.v_p;
  j["seed"] = report.seed;
  j["methods"] = nlohmann::json::array();
  for (const auto& m : report.methods) {
    j["methods"].push_back({{"method", m.method},
                            {"model_objective", m.model_objective},
                            {"first_stage_cost", m.first_stage_cost},
                            {"mean_second_stage", m.mean_second_stage},
                            {"worst_second_stage", m.worst_second_stage},
                            {"mean_drop_ratio", m.mean_drop_ratio},
                            {"max_drop_ratio", m.max_drop_ratio},
                            {"total_average", m.total_average},
                            {"total_worst", m.total_worst},
                            {"realized_total", m.realized_total}});
  }
  return j.dump(2);
}

std::string report_to_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out.precision(12);
  out << "method,metric,value\n";
  for (const auto& m : report.methods) {
    const std::pair<const char*, double> rows[] = {
        {"model_objective", m.model_objective},   {"first_stage_cost", m.first_stage_cost},
        {"mean_second_stage", m.mean_second_stage}, {"worst_second_stage", m.worst_second_stage},
        {"mean_drop_ratio", m.mean_drop_ratio},   {"max_drop_ratio", m.max_drop_ratio},
        {"total_average", m.total_average},       {"total_worst", m.total_worst}};
    for (const auto& [k, v] : rows) out << m.method << ',' << k << ',' << v << '\n';
  }
  return out.str();
}

}  // namespace edgerobust
