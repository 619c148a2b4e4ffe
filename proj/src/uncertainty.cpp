#include "edgerobust/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "edgerobust/error.hpp"
#include "edgerobust/random.hpp"

namespace edgerobust {

double DemandScenario::total() const {
  return std::accumulate(lambda.begin(), lambda.end(), 0.0);
}

UncertaintySet UncertaintySet::from_alpha(const std::vector<double>& forecast, double alpha,
                                          double gamma) {
  UncertaintySet u;
  u.forecast = forecast;
  u.deviation.resize(forecast.size());
  for (size_t i = 0; i < forecast.size(); ++i) u.deviation[i] = alpha * forecast[i];
  u.gamma = gamma;
  return u;
}

void UncertaintySet::validate() const {
  if (deviation.size() != forecast.size()) throw ConfigError("deviation and forecast lengths differ");
  for (size_t i = 0; i < forecast.size(); ++i) {
    if (!(deviation[i] >= 0.0)) throw ConfigError("deviation must be nonnegative");
    if (deviation[i] > forecast[i]) throw ConfigError("deviation exceeds forecast (alpha > 1)");
  }
  if (!(gamma >= 0.0) || gamma > size()) {
    throw ConfigError("gamma must lie in [0, M] (M = " + std::to_string(size()) + ")");
  }
}

DemandScenario UncertaintySet::at(const std::vector<double>& g) const {
  DemandScenario s;
  s.g = g;
  s.lambda.resize(forecast.size());
  for (size_t i = 0; i < forecast.size(); ++i) s.lambda[i] = forecast[i] + g[i] * deviation[i];
  return s;
}

DemandScenario UncertaintySet::nominal() const {
  return at(std::vector<double>(forecast.size(), 0.0));
}

bool UncertaintySet::contains(const DemandScenario& s, double tol) const {
  if (s.lambda.size() != forecast.size() || s.g.size() != forecast.size()) return false;
  double budget = 0.0;
  for (size_t i = 0; i < forecast.size(); ++i) {
    if (std::abs(s.g[i]) > 1.0 + tol) return false;
    budget += std::abs(s.g[i]);
    const double expect = forecast[i] + s.g[i] * deviation[i];
    if (std::abs(s.lambda[i] - expect) > tol * (1.0 + std::abs(expect))) return false;
  }
  return budget <= gamma + tol;
}

namespace {

// Deviations sorted descending, ties by lowest index.
std::vector<int> by_deviation(const std::vector<double>& dev) {
  std::vector<int> order(dev.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dev[a] > dev[b]; });
  return order;
}

double top_deviation_mass(const UncertaintySet& u) {
  const auto order = by_deviation(u.deviation);
  double left = u.gamma;
  double mass = 0.0;
  for (int i : order) {
    if (left <= 0.0) break;
    const double take = std::min(1.0, left);
    mass += take * u.deviation[i];
    left -= take;
  }
  return mass;
}

}  // namespace

double UncertaintySet::min_total_demand() const {
  return std::accumulate(forecast.begin(), forecast.end(), 0.0) - top_deviation_mass(*this);
}

double UncertaintySet::max_total_demand() const {
  return std::accumulate(forecast.begin(), forecast.end(), 0.0) + top_deviation_mass(*this);
}

DemandScenario sample_scenario(const UncertaintySet& u, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> g(u.size());
  double sum = 0.0;
  for (auto& x : g) {
    x = rng.uniform(-1.0, 1.0);
    sum += std::abs(x);
  }
  if (sum > u.gamma) {
    const double scale = sum > 0.0 ? u.gamma / sum : 0.0;
    for (auto& x : g) x *= scale;
  }
  return u.at(g);
}

std::vector<DemandScenario> sample_scenarios(const UncertaintySet& u, int count, uint64_t seed) {
  Rng rng(seed);
  std::vector<DemandScenario> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(sample_scenario(u, rng.index(UINT64_MAX)));
  return out;
}

int64_t extreme_point_count(int m, int gamma) {
  if (gamma < 0 || gamma > m) return 0;
  // 2^Γ C(M, Γ), saturating at INT64_MAX.
  double c = 1.0;
  for (int k = 1; k <= gamma; ++k) c = c * (m - gamma + k) / k;
  const double count = std::ldexp(std::round(c), gamma);
  if (count > 9.0e18) return INT64_MAX;
  return static_cast<int64_t>(count);
}

std::vector<DemandScenario> enumerate_extreme_points(const UncertaintySet& u, int64_t limit) {
  const double rounded = std::round(u.gamma);
  if (std::abs(u.gamma - rounded) > 1e-9) {
    throw UnsupportedEnumerationError("extreme-point enumeration needs an integral gamma");
  }
  const int m = u.size();
  const int gamma = static_cast<int>(rounded);
  if (gamma < 0 || gamma > m) throw UnsupportedEnumerationError("gamma outside [0, M]");
  const int64_t count = extreme_point_count(m, gamma);
  if (count > limit) {
    throw UnsupportedEnumerationError("extreme-point count " + std::to_string(count) +
                                      " exceeds the limit " + std::to_string(limit));
  }
  std::vector<DemandScenario> out;
  out.reserve(count);
  std::vector<int> pick(gamma);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    for (int signs = 0; signs < (1 << gamma); ++signs) {
      std::vector<double> g(m, 0.0);
      for (int k = 0; k < gamma; ++k) g[pick[k]] = (signs >> k) & 1 ? -1.0 : 1.0;
      out.push_back(u.at(g));
    }
    // Next combination in lexicographic order.
    int k = gamma - 1;
    while (k >= 0 && pick[k] == m - gamma + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int l = k + 1; l < gamma; ++l) pick[l] = pick[l - 1] + 1;
  }
  return out;
}

bool has_extreme_structure(const std::vector<double>& g, double gamma, double tol) {
  int fractional = 0;
  double sum = 0.0;
  for (double x : g) {
    const double a = std::abs(x);
    if (a > 1.0 + tol) return false;
    sum += a;
    if (a > tol && a < 1.0 - tol) ++fractional;
  }
  return fractional <= 1 && sum <= gamma + std::max(tol, 1e-9);
}

void write_scenarios_csv(const std::vector<DemandScenario>& scenarios, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "scenario_id,ap_index,lambda\n";
  out.precision(17);
  for (size_t s = 0; s < scenarios.size(); ++s) {
    for (size_t i = 0; i < scenarios[s].lambda.size(); ++i) {
      out << s << ',' << i << ',' << scenarios[s].lambda[i] << '\n';
    }
  }
  if (!out) throw Error("failed writing " + path);
}

std::vector<DemandScenario> read_scenarios_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "scenario_id,ap_index,lambda") {
    throw ParseError(path + ": line 1: expected header scenario_id,ap_index,lambda");
  }
  std::map<long, std::map<long, double>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) {
      throw ParseError(path + ": line " + std::to_string(lineno) + ": expected 3 columns");
    }
    try {
      size_t pa, pb, pc;
      const long s = std::stol(a, &pa);
      const long i = std::stol(b, &pb);
      const double v = std::stod(c, &pc);
      if (pa != a.size() || pb != b.size() || pc != c.size() || s < 0 || i < 0) throw std::invalid_argument("");
      if (!rows[s].emplace(i, v).second) {
        throw ParseError(path + ": line " + std::to_string(lineno) + ": duplicate row");
      }
    } catch (const std::logic_error&) {
      throw ParseError(path + ": line " + std::to_string(lineno) + ": bad number");
    }
  }
  std::vector<DemandScenario> out;
  size_t width = 0;
  long expect_s = 0;
  for (const auto& [s, aps] : rows) {
    if (s != expect_s++) throw ParseError(path + ": scenario ids must be contiguous from 0");
    DemandScenario d;
    long expect_i = 0;
    for (const auto& [i, v] : aps) {
      if (i != expect_i++) throw ParseError(path + ": ap_index must be contiguous from 0");
      d.lambda.push_back(v);
    }
    if (width == 0) width = d.lambda.size();
    if (d.lambda.size() != width) throw ParseError(path + ": scenarios have different AP counts");
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace edgerobust
