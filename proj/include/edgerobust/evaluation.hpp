#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgerobust/instance.hpp"
#include "edgerobust/plan.hpp"
#include "edgerobust/uncertainty.hpp"

namespace edgerobust {

struct OperationResult {
  Allocation allocation;
  std::vector<double> dropped;  // x_i^D, requests
  double drop_ratio = 0.0;      // Σ x^D / Σ λ
  double delay_cost = 0.0;      // β · Σ d x
  double realized_cost = 0.0;   // delay_cost + v^p · drop_ratio
  double second_stage_objective = 0.0;
};

// Recourse LP at a fixed plan: serve, or drop at v_p per unit of drop ratio.
// The delay cap applies to served requests only, so the LP is always feasible.
OperationResult operation_stage(const Instance& inst, const FirstStagePlan& plan,
                                const DemandScenario& demand, double v_p);

struct MethodPlan {
  std::string method;
  FirstStagePlan plan;
  double model_objective = 0.0;  // the method's own optimal value, for reference
};

struct MethodReport {
  std::string method;
  double model_objective = 0.0;
  double first_stage_cost = 0.0;
  double mean_second_stage = 0.0;
  double worst_second_stage = 0.0;
  double mean_drop_ratio = 0.0;
  double max_drop_ratio = 0.0;
  double total_average = 0.0;  // first stage + mean second stage
  double total_worst = 0.0;    // first stage + worst second stage
  std::vector<double> realized_total;  // per test scenario
};

struct ComparisonReport {
  int n_test = 0;
  double v_p = 0.0;
  uint64_t seed = 0;
  std::vector<MethodReport> methods;

  const MethodReport& at(const std::string& method) const;
};

// Every plan is evaluated on the same `n_test` scenarios drawn by
// sample_scenarios(u, n_test, seed).
ComparisonReport evaluate_methods(const Instance& inst, const UncertaintySet& u,
                                  const std::vector<MethodPlan>& plans, int n_test, double v_p,
                                  uint64_t seed);

std::string report_to_json(const ComparisonReport& report);
// `method,metric,value`
std::string report_to_csv(const ComparisonReport& report);

}  // namespace edgerobust
