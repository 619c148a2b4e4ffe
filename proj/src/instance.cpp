#include "edgerobust/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include <json.hpp>

#include "edgerobust/error.hpp"
#include "edgerobust/random.hpp"

namespace edgerobust {

using nlohmann::json;

double Instance::total_forecast() const {
  return std::accumulate(forecast.begin(), forecast.end(), 0.0);
}

double Instance::max_delay() const {
  double d = 0.0;
  for (int i = 0; i < m_aps; ++i) {
    d = std::max(d, delay_cloud[i]);
    for (double e : delay_edge[i]) d = std::max(d, e);
  }
  return d;
}

double Instance::min_delay() const {
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m_aps; ++i) {
    d = std::min(d, delay_cloud[i]);
    for (double e : delay_edge[i]) d = std::min(d, e);
  }
  return d;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid instance: " + what);
}

void require_positive(const std::vector<double>& v, size_t n, const std::string& name) {
  require(v.size() == n, name + " has wrong length");
  for (double x : v) require(std::isfinite(x) && x > 0.0, name + " must be positive");
}

}  // namespace

void Instance::validate() const {
  require(m_aps >= 1 && n_ens >= 1, "need at least one AP and one EN");
  const size_t m = m_aps;
  const size_t n = n_ens;
  require_positive(delay_cloud, m, "delay_cloud");
  require(delay_edge.size() == m, "delay_edge has wrong row count");
  for (const auto& row : delay_edge) require_positive(row, n, "delay_edge");
  require_positive(capacity, n, "capacity");
  require(std::isfinite(price_cloud) && price_cloud > 0.0, "price_cloud must be positive");
  require_positive(price_edge, n, "price_edge");
  require_positive(install_cost, n, "install_cost");
  require_positive(storage_cost, n, "storage_cost");
  require(initial_placement.size() == n, "initial_placement has wrong length");
  for (int z : initial_placement) require(z == 0 || z == 1, "initial_placement must be binary");
  require(std::isfinite(budget) && budget > 0.0, "budget must be positive");
  require(r_min >= 0 && r_min <= n_ens, "r_min must lie in [0, N]");
  require(std::isfinite(delay_cap) && delay_cap > 0.0, "delay_cap must be positive");
  require(std::isfinite(unit_demand) && unit_demand > 0.0, "unit_demand must be positive");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be nonnegative");
  require_positive(forecast, m, "forecast");
}

Topology generate_topology(int n_nodes, int attach_rate, double delay_min,
                           double delay_max, uint64_t seed) {
  if (attach_rate < 1) throw ConfigError("attach rate must be at least 1");
  if (n_nodes < attach_rate + 1) throw ConfigError("too few nodes for the attach rate");
  if (!(delay_min > 0.0) || delay_min > delay_max) throw ConfigError("link delay range inverted");
  Rng rng(seed);
  Topology topo;
  topo.n_nodes = n_nodes;
  std::vector<int> ends;  // each node appears once per incident link
  const int seed_nodes = attach_rate + 1;
  for (int a = 0; a < seed_nodes; ++a) {
    for (int b = a + 1; b < seed_nodes; ++b) {
      topo.links.push_back({a, b, 0.0});
      ends.push_back(a);
      ends.push_back(b);
    }
  }
  for (int v = seed_nodes; v < n_nodes; ++v) {
    std::set<int> targets;
    std::vector<int> order;
    while (static_cast<int>(targets.size()) < attach_rate) {
      const int t = ends[rng.index(ends.size())];
      if (targets.insert(t).second) order.push_back(t);
    }
    for (int t : order) {
      topo.links.push_back({t, v, 0.0});
      ends.push_back(t);
      ends.push_back(v);
    }
  }
  for (auto& l : topo.links) l.delay = rng.uniform(delay_min, delay_max);
  return topo;
}

std::vector<double> shortest_delays(const Topology& topo, int source) {
  std::vector<std::vector<std::pair<int, double>>> adj(topo.n_nodes);
  for (const auto& l : topo.links) {
    adj[l.u].push_back({l.v, l.delay});
    adj[l.v].push_back({l.u, l.delay});
  }
  std::vector<double> dist(topo.n_nodes, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
    }
  }
  return dist;
}

Instance generate_instance(const GeneratorParams& p, uint64_t seed) {
  auto range_ok = [](double lo, double hi) { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; };
  if (!range_ok(p.link_delay_min, p.link_delay_max)) throw ConfigError("link delay range inverted");
  if (!range_ok(p.demand_min, p.demand_max) || p.demand_min <= 0.0) throw ConfigError("demand range invalid");
  if (!range_ok(p.price_edge_min, p.price_edge_max)) throw ConfigError("edge price range inverted");
  if (!range_ok(p.install_min, p.install_max)) throw ConfigError("install cost range inverted");
  if (!range_ok(p.storage_min, p.storage_max)) throw ConfigError("storage cost range inverted");
  if (p.capacity_choices.empty()) throw ConfigError("capacity choices empty");
  if (p.m_aps < 1 || p.n_ens < 1) throw ConfigError("need at least one AP and one EN");
  if (p.m_aps + p.n_ens > p.n_nodes) throw ConfigError("m_aps + n_ens exceeds n_nodes");
  const int ap_pool = std::max(p.ap_pool, p.m_aps);
  const int en_pool = std::max(p.en_pool, p.n_ens);
  if (ap_pool + en_pool > p.n_nodes) throw ConfigError("AP and EN pools exceed n_nodes");
  if (p.r_min < 0 || p.r_min > p.n_ens) throw ConfigError("r_min must lie in [0, N]");
  if (!(p.demand_scale > 0.0)) throw ConfigError("demand scale must be positive");

  Rng rng(seed);
  const Topology topo = generate_topology(p.n_nodes, p.attach_rate, p.link_delay_min,
                                          p.link_delay_max, rng.index(UINT64_MAX));
  std::vector<int> nodes(p.n_nodes);
  std::iota(nodes.begin(), nodes.end(), 0);
  rng.shuffle(nodes);
  std::vector<int> aps(nodes.begin(), nodes.begin() + ap_pool);
  std::vector<int> ens(nodes.begin() + ap_pool, nodes.begin() + ap_pool + en_pool);
  rng.shuffle(aps);
  rng.shuffle(ens);
  aps.resize(p.m_aps);
  ens.resize(p.n_ens);

  Instance inst;
  inst.m_aps = p.m_aps;
  inst.n_ens = p.n_ens;
  inst.delay_cloud.assign(p.m_aps, p.cloud_delay);
  inst.delay_edge.assign(p.m_aps, std::vector<double>(p.n_ens));
  for (int j = 0; j < p.n_ens; ++j) {
    const auto dist = shortest_delays(topo, ens[j]);
    for (int i = 0; i < p.m_aps; ++i) inst.delay_edge[i][j] = dist[aps[i]];
  }
  inst.forecast.resize(p.m_aps);
  for (auto& f : inst.forecast) f = p.demand_scale * rng.uniform(p.demand_min, p.demand_max);
  inst.price_cloud = p.price_cloud;
  inst.capacity.resize(p.n_ens);
  inst.price_edge.resize(p.n_ens);
  inst.install_cost.resize(p.n_ens);
  inst.storage_cost.resize(p.n_ens);
  for (int j = 0; j < p.n_ens; ++j) {
    inst.capacity[j] = p.capacity_choices[rng.index(p.capacity_choices.size())];
    inst.price_edge[j] = rng.uniform(p.price_edge_min, p.price_edge_max);
    inst.install_cost[j] = rng.uniform(p.install_min, p.install_max);
    inst.storage_cost[j] = rng.uniform(p.storage_min, p.storage_max);
  }
  inst.initial_placement.assign(p.n_ens, 0);
  inst.budget = p.budget;
  inst.r_min = p.r_min;
  inst.delay_cap = p.delay_cap;
  inst.unit_demand = p.unit_demand;
  inst.set_beta0(p.beta0);
  return inst;
}

std::vector<double> effective_install_cost(const std::vector<double>& f_cloud,
                                           const std::vector<std::vector<double>>& f_peer,
                                           const std::vector<int>& initial) {
  std::vector<double> f = f_cloud;
  for (size_t j = 0; j < f.size(); ++j) {
    for (size_t k = 0; k < initial.size(); ++k) {
      if (initial[k] == 1) f[j] = std::min(f[j], f_peer[j][k]);
    }
  }
  return f;
}

// ---- JSON ----

namespace {

const std::vector<std::string> kFields = {
    "schema_version", "m_aps",        "n_ens",        "delay_cloud",      "delay_edge",
    "capacity",       "price_cloud",  "price_edge",   "install_cost",     "storage_cost",
    "initial_placement", "budget",    "r_min",        "delay_cap",        "unit_demand",
    "beta",           "forecast"};

template <typename T>
T field(const json& j, const std::string& name) {
  if (!j.contains(name)) throw ParseError("missing field \"" + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ParseError("field \"" + name + "\" has the wrong type");
  }
}

// Line number of a byte offset, for parse error messages.
size_t line_of(const std::string& text, size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + std::count(text.begin(), text.begin() + byte, '\n');
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  json j;
  j["schema_version"] = 1;
  j["m_aps"] = inst.m_aps;
  j["n_ens"] = inst.n_ens;
  j["delay_cloud"] = inst.delay_cloud;
  j["delay_edge"] = inst.delay_edge;
  j["capacity"] = inst.capacity;
  j["price_cloud"] = inst.price_cloud;
  j["price_edge"] = inst.price_edge;
  j["install_cost"] = inst.install_cost;
  j["storage_cost"] = inst.storage_cost;
  j["initial_placement"] = inst.initial_placement;
  j["budget"] = inst.budget;
  j["r_min"] = inst.r_min;
  j["delay_cap"] = inst.delay_cap;
  j["unit_demand"] = inst.unit_demand;
  j["beta"] = inst.beta;
  j["forecast"] = inst.forecast;
  return j.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at line " + std::to_string(line_of(text, e.byte)) +
                     ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(kFields.begin(), kFields.end(), it.key()) == kFields.end()) {
      throw ParseError("unknown field \"" + it.key() + "\"");
    }
  }
  if (field<int>(j, "schema_version") != 1) throw ParseError("field \"schema_version\" must be 1");
  Instance inst;
  inst.m_aps = field<int>(j, "m_aps");
  inst.n_ens = field<int>(j, "n_ens");
  inst.delay_cloud = field<std::vector<double>>(j, "delay_cloud");
  inst.delay_edge = field<std::vector<std::vector<double>>>(j, "delay_edge");
  inst.capacity = field<std::vector<double>>(j, "capacity");
  inst.price_cloud = field<double>(j, "price_cloud");
  inst.price_edge = field<std::vector<double>>(j, "price_edge");
  inst.install_cost = field<std::vector<double>>(j, "install_cost");
  inst.storage_cost = field<std::vector<double>>(j, "storage_cost");
  inst.initial_placement = field<std::vector<int>>(j, "initial_placement");
  inst.budget = field<double>(j, "budget");
  inst.r_min = field<int>(j, "r_min");
  inst.delay_cap = field<double>(j, "delay_cap");
  inst.unit_demand = field<double>(j, "unit_demand");
  inst.beta = field<double>(j, "beta");
  inst.forecast = field<std::vector<double>>(j, "forecast");
  try {
    inst.validate();
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
  return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << instance_to_json(inst);
  if (!out) throw Error("failed writing " + path);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return instance_from_json(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace edgerobust
