#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace edgerobust {

// The planning problem. Demand is in requests per period, capacity and sizing
// in compute units (vCPU), `unit_demand` converts requests to units.
struct Instance {
  int m_aps = 0;
  int n_ens = 0;
  std::vector<double> delay_cloud;              // d_{i,0}, ms
  std::vector<std::vector<double>> delay_edge;  // d_{i,j}, ms, M x N
  std::vector<double> capacity;                 // C_j
  double price_cloud = 0.0;                     // p_0
  std::vector<double> price_edge;               // p_j
  std::vector<double> install_cost;             // f_j
  std::vector<double> storage_cost;             // s_j
  std::vector<int> initial_placement;           // z_j^0
  double budget = 0.0;
  int r_min = 0;
  double delay_cap = 0.0;    // D^m, ms
  double unit_demand = 0.0;  // w
  double beta = 0.0;         // $ per request·ms
  std::vector<double> forecast;

  bool operator==(const Instance&) const = default;

  // h_j = f_j (1 - z_j^0) + s_j, the one-off cost of having the service on EN j.
  double placement_weight(int j) const {
    return install_cost[j] * (1 - initial_placement[j]) + storage_cost[j];
  }
  double total_forecast() const;
  double max_delay() const;
  double min_delay() const;
  // Throws ConfigError on shape mismatches or non-positive data.
  void validate() const;
  // True when no allocation can meet the average-delay cap (D^m below every delay).
  bool delay_cap_unreachable() const { return delay_cap < min_delay(); }
  // Sets beta from the normalized knob β₀ = β Σλ^f.
  void set_beta0(double beta0) { beta = beta0 / total_forecast(); }
};

struct GeneratorParams {
  int n_nodes = 100;
  int attach_rate = 2;
  int ap_pool = 80;  // nodes designated as APs before subsampling
  int en_pool = 20;  // nodes designated as ENs before subsampling
  int m_aps = 20;
  int n_ens = 5;
  double link_delay_min = 2.0;
  double link_delay_max = 5.0;
  double cloud_delay = 80.0;
  double demand_min = 1000.0;
  double demand_max = 4000.0;
  double price_cloud = 0.03;
  double price_edge_min = 0.04;
  double price_edge_max = 0.06;
  double install_min = 0.2;
  double install_max = 0.25;
  double storage_min = 0.1;
  double storage_max = 0.12;
  // vCPU sizes of the EC2 M5 family; each EN draws one uniformly.
  std::vector<double> capacity_choices = {2, 4, 8, 16, 32, 48, 64, 96};
  double budget = 100.0;
  int r_min = 2;
  double delay_cap = 30.0;
  // 1 MHz per request on 2.5 GHz vCPUs.
  double unit_demand = 1.0 / 2500.0;
  double beta0 = 0.01;
  double demand_scale = 1.0;
};

struct Link {
  int u;
  int v;
  double delay;
};

struct Topology {
  int n_nodes = 0;
  std::vector<Link> links;
};

// Barabási–Albert graph: a clique on attach_rate + 1 seed nodes, then each new
// node links to attach_rate distinct existing nodes chosen proportionally to
// degree. Link delays are uniform on [delay_min, delay_max].
Topology generate_topology(int n_nodes, int attach_rate, double delay_min,
                           double delay_max, uint64_t seed);

// Single-source shortest-path delays (Dijkstra). Unreachable nodes get +inf.
std::vector<double> shortest_delays(const Topology& topo, int source);

Instance generate_instance(const GeneratorParams& params, uint64_t seed);

// f_j = min{f_{j,0}, min_{j' : z_{j'}^0 = 1} f_{j,j'}}.
std::vector<double> effective_install_cost(const std::vector<double>& f_cloud,
                                           const std::vector<std::vector<double>>& f_peer,
                                           const std::vector<int>& initial);

// JSON with `schema_version: 1`; unknown or missing fields are ParseErrors.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

}  // namespace edgerobust
