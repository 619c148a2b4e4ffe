#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "edgerobust/aro_ccg.hpp"
#include "edgerobust/error.hpp"

namespace edgerobust {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

bool same_scenario(const DemandScenario& a, const DemandScenario& b) {
  if (a.lambda.size() != b.lambda.size()) return false;
  for (size_t i = 0; i < a.lambda.size(); ++i) {
    if (std::fabs(a.lambda[i] - b.lambda[i]) > 1e-9) return false;
  }
  return true;
}

double gap_of(double lb, double ub) {
  if (!std::isfinite(ub)) return std::numeric_limits<double>::infinity();
  return (ub - lb) / std::max(std::fabs(ub), 1e-12);
}

}  // namespace

const char* to_string(CcgStatus status) {
  switch (status) {
    case CcgStatus::kConverged: return "converged";
    case CcgStatus::kRepeatedScenario: return "repeated_scenario";
    case CcgStatus::kMaxIterations: return "max_iterations";
  }
  return "?";
}

CcgResult ccg_solve(const Instance& inst, const UncertaintySet& u, const CcgOptions& options) {
  if (!(options.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (options.max_iter < 1) throw ConfigError("max_iter must be at least 1");
  inst.validate();
  u.validate();
  if (u.size() != inst.m_aps) throw ConfigError("uncertainty set size differs from the number of APs");

  constexpr double kBoundTol = 1e-6;
  const double violation_tol = 1e-7 * inst.delay_cap * (u.max_total_demand() + 1.0);

  CcgResult res;
  CcgTrace& trace = res.trace;
  trace.pool.push_back(initial_scenario(u));
  double lb = -std::numeric_limits<double>::infinity();
  double ub = std::numeric_limits<double>::infinity();
  bool have_plan = false;
  bool feasibility_cuts = false;

  for (int k = 1; k <= options.max_iter; ++k) {
    CcgIteration it;
    it.k = k;

    auto t0 = std::chrono::steady_clock::now();
    MasterSolution master;
    try {
      master = solve_master(inst, trace.pool, options.master);
    } catch (const ModelInfeasibleError& e) {
      if (feasibility_cuts) {
        throw RobustInfeasibleError("no plan keeps the second stage feasible for every demand in D");
      }
      throw;
    }
    it.master_ms = ms_since(t0);
    const double scale = std::max(1.0, std::fabs(master.lower_bound));
    if (master.lower_bound < lb - kBoundTol * scale) {
      throw SolverError("master lower bound decreased between iterations");
    }
    lb = std::max(lb, master.lower_bound);
    const Sizing y = sizing_of(master.plan);

    t0 = std::chrono::steady_clock::now();
    SubproblemSolution sub =
        solve_subproblem(inst, u, y, options.subproblem, SubproblemKind::kWorstDelay);
    DemandScenario next;
    if (!sub.feasible) {
      const SubproblemSolution feas =
          solve_subproblem(inst, u, y, options.subproblem, SubproblemKind::kFeasibility);
      if (feas.objective <= violation_tol) {
        throw SolverError("worst-delay subproblem infeasible but no delay-cap violation found");
      }
      next = feas.worst_demand;
      it.feasibility_cut = true;
    } else {
      next = sub.worst_demand;
      const double candidate = master.plan.cost() + sub.objective;
      if (candidate < ub) {
        const SubproblemSolution feas =
            solve_subproblem(inst, u, y, options.subproblem, SubproblemKind::kFeasibility);
        if (feas.objective > violation_tol) {
          next = feas.worst_demand;
          it.feasibility_cut = true;
        } else {
          ub = candidate;
          res.plan = master.plan;
          res.worst_delay_cost = sub.objective;
          have_plan = true;
        }
      }
    }
    it.sub_ms = ms_since(t0);
    feasibility_cuts = feasibility_cuts || it.feasibility_cut;
    if (lb > ub + kBoundTol * std::max(1.0, std::fabs(ub))) {
      throw SolverError("CCG lower bound exceeds the upper bound");
    }
    it.lb = lb;
    it.ub = ub;
    it.scenario = next;
    trace.iterations.push_back(it);
    trace.final_gap = gap_of(lb, ub);

    if (have_plan && trace.final_gap <= options.epsilon) {
      trace.status = CcgStatus::kConverged;
      break;
    }
    bool repeated = false;
    for (const auto& s : trace.pool) repeated = repeated || same_scenario(s, next);
    if (repeated) {
      if (!have_plan || trace.final_gap > options.epsilon) {
        throw SolverError("scenario repeated while the gap is still open");
      }
      trace.status = CcgStatus::kRepeatedScenario;
      break;
    }
    trace.pool.push_back(next);
  }
  res.objective = have_plan ? ub : std::numeric_limits<double>::infinity();
  return res;
}

void write_trace_csv(const CcgTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out.precision(12);
  out << "iter,LB,UB,gap,master_ms,sub_ms\n";
  for (const auto& it : trace.iterations) {
    out << it.k << ',' << it.lb << ',' << it.ub << ',' << gap_of(it.lb, it.ub) << ','
        << it.master_ms << ',' << it.sub_ms << '\n';
  }
}

std::string trace_scenarios_json(const CcgTrace& trace) {
  nlohmann::json j;
  j["status"] = to_string(trace.status);
  j["final_gap"] = std::isfinite(trace.final_gap) ? nlohmann::json(trace.final_gap) : nlohmann::json();
  j["iterations"] = nlohmann::json::array();
  for (const auto& it : trace.iterations) {
    j["iterations"].push_back({{"k", it.k},
                               {"lambda", it.scenario.lambda},
                               {"g", it.scenario.g},
                               {"feasibility_cut", it.feasibility_cut}});
  }
  return j.dump(2);
}

}  // namespace edgerobust
