#pragma once

#include <vector>

#include "edgerobust/instance.hpp"

namespace edgerobust {

// Here-and-now decisions and their cost breakdown.
struct FirstStagePlan {
  std::vector<int> placement;     // z_j
  double size_cloud = 0.0;        // y_0
  std::vector<double> size_edge;  // y_j
  double cost_placement = 0.0;    // Σ f_j (1 - z_j^0) z_j
  double cost_storage = 0.0;      // Σ s_j z_j
  double cost_edge = 0.0;         // Σ p_j y_j
  double cost_cloud = 0.0;        // p_0 y_0

  double cost() const { return cost_placement + cost_storage + cost_edge + cost_cloud; }
  double total_size() const;
  int placed() const;
};

struct Allocation {
  std::vector<double> to_cloud;               // x_{i,0}
  std::vector<std::vector<double>> to_edge;   // x_{i,j}
  double total_delay = 0.0;                   // request·ms
  double avg_delay = 0.0;                     // ms, over the demand served

  double served(int i) const;
};

// Recomputes the cost breakdown from (z, y). Entries of z are rounded.
FirstStagePlan make_plan(const Instance& inst, const std::vector<double>& z, double y0,
                         const std::vector<double>& y);
// Recomputes delays; `demand_total` is the denominator of the average delay.
Allocation make_allocation(const Instance& inst, std::vector<double> x0,
                           std::vector<std::vector<double>> x, double demand_total);

// Throws ConfigError if the plan violates y_j <= z_j C_j, r_min or the budget
// (tolerance 1e-6).
void check_plan(const Instance& inst, const FirstStagePlan& plan);

}  // namespace edgerobust
