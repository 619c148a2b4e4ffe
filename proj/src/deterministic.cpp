#include "edgerobust/deterministic.hpp"

#include "edgerobust/error.hpp"
#include "formulation.hpp"

namespace edgerobust {

namespace {

struct DeterministicModel {
  solver::MilpModel model;
  detail::FirstStageVars fs;
  detail::AllocationVars alloc;
};

DeterministicModel build(const Instance& inst, const DemandScenario& demand,
                         const detail::BuildFlags& flags) {
  if (static_cast<int>(demand.lambda.size()) != inst.m_aps) {
    throw ConfigError("demand vector length differs from the number of APs");
  }
  for (double l : demand.lambda) {
    if (!(l >= 0.0)) throw ConfigError("demand must be nonnegative");
  }
  DeterministicModel d;
  d.fs = detail::add_first_stage(d.model, inst, flags);
  d.alloc = detail::add_allocation(d.model, inst, d.fs, demand.lambda, solver::Relation::kEqual,
                                   inst.beta, inst.delay_cap * demand.total(), "", flags);
  return d;
}

}  // namespace

solver::MilpModel build_deterministic(const Instance& inst, const DemandScenario& demand) {
  return build(inst, demand, {}).model;
}

ModelResult solve_deterministic(const Instance& inst, const DemandScenario& demand,
                                const solver::MilpOptions& options) {
  inst.validate();
  DeterministicModel d = build(inst, demand, {});
  const solver::MilpSolution s = solver::solve_milp(d.model, options);
  if (s.status == solver::SolveStatus::kInfeasible) {
    const std::string cls = detail::diagnose_infeasibility(
        [&](const detail::BuildFlags& f) { return build(inst, demand, f).model; }, options);
    throw ModelInfeasibleError("deterministic model infeasible (" + cls + ")", cls);
  }
  if (s.status == solver::SolveStatus::kUnbounded) throw SolverError("deterministic model unbounded");
  ModelResult r;
  r.plan = detail::read_plan(inst, d.fs, s.values);
  r.allocation = detail::read_allocation(inst, d.alloc, s.values, demand.total());
  r.objective = s.objective;
  r.delay_cost = inst.beta * r.allocation.total_delay;
  r.nodes = s.nodes;
  r.seconds = s.seconds;
  return r;
}

}  // namespace edgerobust
