#include "edgerobust/plan.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "edgerobust/error.hpp"

namespace edgerobust {

double FirstStagePlan::total_size() const {
  return size_cloud + std::accumulate(size_edge.begin(), size_edge.end(), 0.0);
}

int FirstStagePlan::placed() const {
  return std::accumulate(placement.begin(), placement.end(), 0);
}

double Allocation::served(int i) const {
  return to_cloud[i] + std::accumulate(to_edge[i].begin(), to_edge[i].end(), 0.0);
}

FirstStagePlan make_plan(const Instance& inst, const std::vector<double>& z, double y0,
                         const std::vector<double>& y) {
  FirstStagePlan p;
  p.placement.resize(inst.n_ens);
  // LP noise below this is snapped to zero.
  constexpr double kNoise = 1e-12;
  p.size_cloud = y0 > kNoise ? y0 : 0.0;
  p.size_edge.resize(inst.n_ens);
  for (int j = 0; j < inst.n_ens; ++j) {
    p.placement[j] = static_cast<int>(std::lround(z[j]));
    p.size_edge[j] = p.placement[j] && y[j] > kNoise ? y[j] : 0.0;
    p.cost_placement += inst.install_cost[j] * (1 - inst.initial_placement[j]) * p.placement[j];
    p.cost_storage += inst.storage_cost[j] * p.placement[j];
    p.cost_edge += inst.price_edge[j] * p.size_edge[j];
  }
  p.cost_cloud = inst.price_cloud * p.size_cloud;
  return p;
}

Allocation make_allocation(const Instance& inst, std::vector<double> x0,
                           std::vector<std::vector<double>> x, double demand_total) {
  Allocation a;
  a.to_cloud = std::move(x0);
  a.to_edge = std::move(x);
  for (int i = 0; i < inst.m_aps; ++i) {
    a.total_delay += inst.delay_cloud[i] * a.to_cloud[i];
    for (int j = 0; j < inst.n_ens; ++j) a.total_delay += inst.delay_edge[i][j] * a.to_edge[i][j];
  }
  a.avg_delay = demand_total > 0.0 ? a.total_delay / demand_total : 0.0;
  return a;
}

void check_plan(const Instance& inst, const FirstStagePlan& plan) {
  constexpr double kTol = 1e-6;
  for (int j = 0; j < inst.n_ens; ++j) {
    if (plan.size_edge[j] > plan.placement[j] * inst.capacity[j] + kTol) {
      throw ConfigError("plan buys capacity on EN " + std::to_string(j) + " beyond z_j C_j");
    }
  }
  if (plan.placed() < inst.r_min) throw ConfigError("plan places fewer than r_min services");
  if (plan.cost() > inst.budget + kTol) throw ConfigError("plan exceeds the budget");
}

}  // namespace edgerobust
