#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace edgerobust {

// A demand realization. `g` holds the normalized deviations when the scenario
// was built from an uncertainty set, and is empty for free-standing demand.
struct DemandScenario {
  std::vector<double> lambda;
  std::vector<double> g;

  double total() const;
  bool operator==(const DemandScenario&) const = default;
};

// Budget set {λ : λ_i = λ^f_i + g_i λ̂_i, |g_i| <= 1, Σ|g_i| <= Γ}.
struct UncertaintySet {
  std::vector<double> forecast;
  std::vector<double> deviation;
  double gamma = 0.0;

  static UncertaintySet from_alpha(const std::vector<double>& forecast, double alpha,
                                   double gamma);

  int size() const { return static_cast<int>(forecast.size()); }
  // Throws ConfigError unless 0 <= λ̂ <= λ^f and 0 <= Γ <= M.
  void validate() const;
  DemandScenario at(const std::vector<double>& g) const;
  DemandScenario nominal() const;
  bool contains(const DemandScenario& s, double tol = 1e-9) const;
  // min_{λ∈D} Σλ_i: the Γ largest deviations pushed down (fractional last).
  double min_total_demand() const;
  double max_total_demand() const;
};

// g uniform on [-1,1]^M, scaled by Γ/Σ|g| when the budget is exceeded.
DemandScenario sample_scenario(const UncertaintySet& u, uint64_t seed);
std::vector<DemandScenario> sample_scenarios(const UncertaintySet& u, int count,
                                             uint64_t seed);

// Every g with exactly Γ entries in {-1,+1} and the rest 0 (g = 0 for Γ = 0).
// Throws UnsupportedEnumerationError for fractional Γ or more than `limit` points.
std::vector<DemandScenario> enumerate_extreme_points(const UncertaintySet& u,
                                                     int64_t limit = 1000000);
int64_t extreme_point_count(int m, int gamma);

// All |g_i| in {0,1} except at most one fractional entry, Σ|g_i| <= Γ.
bool has_extreme_structure(const std::vector<double>& g, double gamma, double tol = 1e-7);

// CSV with header `scenario_id,ap_index,lambda`.
void write_scenarios_csv(const std::vector<DemandScenario>& scenarios,
                         const std::string& path);
std::vector<DemandScenario> read_scenarios_csv(const std::string& path);

}  // namespace edgerobust
