// Command-line front end: gen, solve, compare.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "edgerobust/aro_ccg.hpp"
#include "edgerobust/deterministic.hpp"
#include "edgerobust/error.hpp"
#include "edgerobust/evaluation.hpp"
#include "edgerobust/static_ro.hpp"
#include "edgerobust/stochastic.hpp"

namespace fs = std::filesystem;
using namespace edgerobust;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kValidation = 2, kInfeasible = 3, kNotConverged = 4, kSolverFailure = 5 };

// ---- shared knobs -------------------------------------------------------

struct ModelKnobs {
  std::string instance;
  double alpha = 0.3;
  double gamma = 10.0;
  double beta0 = -1.0;  // negative: keep the instance's β
  double eps = 1e-4;
  double gap = 1e-9;
  int max_iter = 50;
  int so_scenarios = 1000;
  uint64_t so_seed = 9000;
  double so_sigma = 0.5;
  double so_correlation = 0.0;
  std::string out;
};

void add_model_knobs(CLI::App* app, ModelKnobs& k) {
  app->add_option("-i,--instance", k.instance, "instance JSON")->required();
  app->add_option("--alpha", k.alpha, "deviation ratio, λ̂ = α λ^f")->capture_default_str();
  app->add_option("--gamma", k.gamma, "uncertainty budget Γ")->capture_default_str();
  app->add_option("--beta0", k.beta0, "delay weight β₀ = β Σλ^f (default: from the instance)");
  app->add_option("--eps", k.eps, "CCG relative gap")->capture_default_str();
  app->add_option("--gap", k.gap, "MILP relative gap")->capture_default_str();
  app->add_option("--max-iter", k.max_iter, "CCG iteration limit")->capture_default_str();
  app->add_option("--so-scenarios", k.so_scenarios, "training scenarios for sp")->capture_default_str();
  app->add_option("--so-seed", k.so_seed, "training scenario seed")->capture_default_str();
  app->add_option("--so-sigma", k.so_sigma, "σ_i / λ̂_i of the training sampler")->capture_default_str();
  app->add_option("--so-correlation", k.so_correlation, "equicorrelation of the training sampler")
      ->capture_default_str();
  app->add_option("-o,--out", k.out, "output directory (default $EDGEROBUST_OUT or .)");
}

std::string out_dir(const std::string& flag) {
  std::string dir = flag;
  if (dir.empty()) {
    const char* env = std::getenv("EDGEROBUST_OUT");
    dir = env ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

// Writes to a temporary name first so readers never see a partial file.
void write_file(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

Instance load_with_beta(const ModelKnobs& k) {
  Instance inst = load_instance(k.instance);
  if (k.beta0 >= 0.0) inst.set_beta0(k.beta0);
  return inst;
}

UncertaintySet make_set(const Instance& inst, double alpha, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  UncertaintySet u = UncertaintySet::from_alpha(inst.forecast, alpha, gamma);
  u.validate();
  return u;
}

solver::MilpOptions milp_options(const ModelKnobs& k) {
  solver::MilpOptions o;
  o.gap_tol = k.gap;
  return o;
}

json plan_json(const Instance& inst, const FirstStagePlan& p) {
  json nodes = json::array();
  nodes.push_back({{"node", "cloud"}, {"size", p.size_cloud}});
  for (int j = 0; j < inst.n_ens; ++j) {
    nodes.push_back({{"node", "EN" + std::to_string(j + 1)},
                     {"placed", p.placement[j]},
                     {"size", p.size_edge[j]}});
  }
  return {{"placement", p.placement},
          {"size_cloud", p.size_cloud},
          {"size_edge", p.size_edge},
          {"cost", {{"placement", p.cost_placement},
                    {"storage", p.cost_storage},
                    {"edge", p.cost_edge},
                    {"cloud", p.cost_cloud},
                    {"total", p.cost()}}},
          {"nodes", nodes}};
}

json allocation_json(const Allocation& a) {
  return {{"to_cloud", a.to_cloud},
          {"to_edge", a.to_edge},
          {"total_delay", a.total_delay},
          {"avg_delay", a.avg_delay}};
}

struct Solved {
  std::string method;
  FirstStagePlan plan;
  double objective = 0.0;
  json report;
  CcgTrace trace;  // aro only
  bool converged = true;
};

Solved solve_method(const std::string& method, const Instance& inst, const UncertaintySet& u,
                    const ModelKnobs& k) {
  Solved s;
  s.method = method;
  if (method == "det") {
    const ModelResult r = solve_deterministic(inst, u.nominal(), milp_options(k));
    s.plan = r.plan;
    s.objective = r.objective;
    s.report = {{"delay_cost", r.delay_cost}, {"allocation", allocation_json(r.allocation)},
                {"nodes", r.nodes}, {"seconds", r.seconds}};
  } else if (method == "ro") {
    const StaticRoResult r = solve_static_ro(inst, u, milp_options(k));
    s.plan = r.plan;
    s.objective = r.objective;
    s.report = {{"delay_cost", r.delay_cost}, {"delay_rhs", r.delay_rhs},
                {"allocation", allocation_json(r.allocation)},
                {"nodes", r.nodes}, {"seconds", r.seconds}};
  } else if (method == "aro") {
    if (!(k.eps > 0.0)) throw ConfigError("eps must be positive");
    CcgOptions o;
    o.epsilon = k.eps;
    o.max_iter = k.max_iter;
    o.master = milp_options(k);
    const CcgResult r = ccg_solve(inst, u, o);
    s.plan = r.plan;
    s.objective = r.objective;
    s.trace = r.trace;
    s.report = {{"worst_delay_cost", r.worst_delay_cost},
                {"iterations", r.trace.iterations.size()},
                {"final_gap", r.trace.final_gap},
                {"status", to_string(r.trace.status)}};
    s.converged = r.converged();
  } else if (method == "sp") {
    if (k.so_scenarios < 1) throw ConfigError("so-scenarios must be at least 1");
    NormalSamplerParams p;
    p.sigma_ratio = k.so_sigma;
    p.correlation = k.so_correlation;
    const ScenarioSet set =
        ScenarioSet::uniform(sample_normal_scenarios(u, k.so_scenarios, k.so_seed, p));
    StochasticOptions o;
    o.milp = milp_options(k);
    const StochasticResult r = solve_stochastic(inst, set, o);
    s.plan = r.plan;
    s.objective = r.objective;
    s.report = {{"expected_delay_cost", r.expected_delay_cost},
                {"lower_bound", r.lower_bound},
                {"iterations", r.iterations},
                {"decomposed", r.decomposed},
                {"scenarios", k.so_scenarios},
                {"seconds", r.seconds}};
  } else {
    throw ConfigError("unknown method '" + method + "'");
  }
  return s;
}

void write_trace_file(const CcgTrace& trace, const fs::path& path) {
  const fs::path tmp = path.string() + ".tmp";
  write_trace_csv(trace, tmp.string());
  fs::rename(tmp, path);
}

// Runs `count` independent tasks on up to `jobs` threads.
void run_parallel(int count, int jobs, const std::function<void(int)>& task) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex lock;
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(jobs, count); ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> parse_list(const std::string& flag, const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(flag + ": '" + item + "' is not a number");
    }
  }
  if (v.empty()) throw ConfigError(flag + " needs at least one value");
  return v;
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(12);
  o << v;
  return o.str();
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  GeneratorParams p;
  uint64_t seed = 1;
  std::string output = "instance.json";
};

int cmd_gen(const GenArgs& a) {
  const Instance inst = generate_instance(a.p, a.seed);
  fs::path path(a.output);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file(path, instance_to_json(inst));
  std::printf("wrote %s: M=%d N=%d total forecast %.3f beta %.6g%s\n", a.output.c_str(),
              inst.m_aps, inst.n_ens, inst.total_forecast(), inst.beta,
              inst.delay_cap_unreachable() ? " (delay cap unreachable)" : "");
  return kOk;
}

// ---- solve ----------------------------------------------------------------

int cmd_solve(const std::string& method, const ModelKnobs& k) {
  const Instance inst = load_with_beta(k);
  const UncertaintySet u = make_set(inst, k.alpha, k.gamma);
  const fs::path dir = out_dir(k.out);
  const Solved s = solve_method(method, inst, u, k);
  std::string note;
  if (!s.converged) {
    note = "CCG stopped after " + std::to_string(s.trace.iterations.size()) +
           " iterations with gap " + fmt(s.trace.final_gap);
  }
  json j = {{"method", method},
            {"instance", k.instance},
            {"alpha", k.alpha},
            {"gamma", k.gamma},
            {"beta", inst.beta},
            {"objective", s.objective},
            {"plan", plan_json(inst, s.plan)},
            {"details", s.report}};
  if (!note.empty()) j["warning"] = note;
  write_file(dir / (method + "_plan.json"), j.dump(2) + "\n");
  if (method == "aro") {
    write_trace_file(s.trace, dir / "aro_trace.csv");
    write_file(dir / "aro_scenarios.json", trace_scenarios_json(s.trace) + "\n");
  }
  std::printf("%s objective %.9g first-stage %.9g\n", method.c_str(), s.objective, s.plan.cost());
  if (!note.empty()) {
    std::fprintf(stderr, "not converged: %s\n", note.c_str());
    return kNotConverged;
  }
  return kOk;
}

// ---- compare --------------------------------------------------------------

struct CompareArgs {
  ModelKnobs k;
  int n_test = 100;
  double v_p = 40.0;
  uint64_t test_seed = 7000;
  int jobs = 1;
  std::string sweep_gamma, sweep_alpha, sweep_beta0, sweep_m, sweep_n;
  uint64_t gen_seed = 1;
};

struct SweepRow {
  std::vector<std::string> keys;
  std::string method;
  double objective = 0.0;
  double first_stage = 0.0;
  std::string status = "ok";
};

std::string rows_csv(const std::string& header, const std::vector<SweepRow>& rows) {
  std::string s = header + ",method,objective,first_stage_cost,second_stage_cost,status\n";
  for (const auto& r : rows) {
    for (const auto& k : r.keys) s += k + ",";
    s += r.method + "," + fmt(r.objective) + "," + fmt(r.first_stage) + "," +
         fmt(r.objective - r.first_stage) + "," + r.status + "\n";
  }
  return s;
}

SweepRow sweep_point(const std::vector<std::string>& keys, const std::string& method,
                     const Instance& inst, double alpha, double gamma, const ModelKnobs& k) {
  SweepRow row{keys, method};
  try {
    const Solved s = solve_method(method, inst, make_set(inst, alpha, gamma), k);
    row.objective = s.objective;
    row.first_stage = s.plan.cost();
    if (!s.converged) row.status = "not_converged";
  } catch (const ModelInfeasibleError&) {
    row.status = "infeasible";
  } catch (const RobustInfeasibleError&) {
    row.status = "robust_infeasible";
  }
  return row;
}

int cmd_compare(const CompareArgs& a) {
  const ModelKnobs& k = a.k;
  if (a.n_test < 1) throw ConfigError("n-test must be at least 1");
  if (a.jobs < 1) throw ConfigError("jobs must be at least 1");
  const Instance inst = load_with_beta(k);
  const UncertaintySet u = make_set(inst, k.alpha, k.gamma);
  const fs::path dir = out_dir(k.out);

  const std::vector<std::string> methods = {"det", "ro", "aro", "sp"};
  std::vector<Solved> solved(methods.size());
  run_parallel(static_cast<int>(methods.size()), a.jobs,
               [&](int i) { solved[i] = solve_method(methods[i], inst, u, k); });

  std::vector<MethodPlan> plans;
  for (const auto& s : solved) plans.push_back({s.method, s.plan, s.objective});
  const ComparisonReport rep = evaluate_methods(inst, u, plans, a.n_test, a.v_p, a.test_seed);
  write_file(dir / "report.json", report_to_json(rep) + "\n");
  write_file(dir / "report.csv", report_to_csv(rep));

  {  // resources by node
    std::string s = "method,node,placed,size\n";
    for (const auto& m : solved) {
      s += m.method + ",cloud,1," + fmt(m.plan.size_cloud) + "\n";
      for (int j = 0; j < inst.n_ens; ++j) {
        s += m.method + ",EN" + std::to_string(j + 1) + "," + std::to_string(m.plan.placement[j]) +
             "," + fmt(m.plan.size_edge[j]) + "\n";
      }
    }
    write_file(dir / "fig6_resources.csv", s);
  }
  {  // average and worst-case realized cost
    std::string s = "method,first_stage_cost,total_average,total_worst,mean_drop_ratio,max_drop_ratio\n";
    for (const auto& m : rep.methods) {
      s += m.method + "," + fmt(m.first_stage_cost) + "," + fmt(m.total_average) + "," +
           fmt(m.total_worst) + "," + fmt(m.mean_drop_ratio) + "," + fmt(m.max_drop_ratio) + "\n";
    }
    write_file(dir / "fig7_realized.csv", s);
  }
  {  // robust objective against realized totals
    std::string s = "method,scenario,model_objective,realized_total\n";
    for (const auto& m : rep.methods) {
      if (m.method != "ro" && m.method != "aro") continue;
      for (size_t t = 0; t < m.realized_total.size(); ++t) {
        s += m.method + "," + std::to_string(t) + "," + fmt(m.model_objective) + "," +
             fmt(m.realized_total[t]) + "\n";
      }
    }
    write_file(dir / "fig8_robust_vs_actual.csv", s);
  }
  {  // convergence
    const CcgTrace& trace = solved[2].trace;
    write_trace_file(trace, dir / "fig11_convergence.csv");
    write_file(dir / "aro_scenarios.json", trace_scenarios_json(trace) + "\n");
  }

  const std::vector<std::string> sweep_methods = {"det", "ro", "aro"};
  if (!a.sweep_beta0.empty()) {
    const auto betas = parse_list("--sweep-beta0", a.sweep_beta0);
    std::vector<SweepRow> rows(betas.size() * sweep_methods.size());
    run_parallel(static_cast<int>(rows.size()), a.jobs, [&](int idx) {
      Instance b = inst;
      b.set_beta0(betas[idx / sweep_methods.size()]);
      rows[idx] = sweep_point({fmt(betas[idx / sweep_methods.size()])},
                              sweep_methods[idx % sweep_methods.size()], b, k.alpha, k.gamma, k);
    });
    write_file(dir / "fig5_cost_vs_beta0.csv", rows_csv("beta0", rows));
  }
  if (!a.sweep_gamma.empty()) {
    const auto gammas = parse_list("--sweep-gamma", a.sweep_gamma);
    const auto alphas = a.sweep_alpha.empty() ? std::vector<double>{k.alpha}
                                              : parse_list("--sweep-alpha", a.sweep_alpha);
    std::vector<SweepRow> rows(alphas.size() * gammas.size());
    run_parallel(static_cast<int>(rows.size()), a.jobs, [&](int idx) {
      const double al = alphas[idx / gammas.size()];
      const double ga = gammas[idx % gammas.size()];
      rows[idx] = sweep_point({fmt(al), fmt(ga)}, "aro", inst, al, ga, k);
    });
    write_file(dir / "fig9_alpha_gamma.csv", rows_csv("alpha,gamma", rows));
    if (!a.sweep_beta0.empty()) {
      const auto betas = parse_list("--sweep-beta0", a.sweep_beta0);
      std::vector<SweepRow> brows(betas.size() * gammas.size());
      run_parallel(static_cast<int>(brows.size()), a.jobs, [&](int idx) {
        Instance b = inst;
        const double be = betas[idx / gammas.size()];
        const double ga = gammas[idx % gammas.size()];
        b.set_beta0(be);
        brows[idx] = sweep_point({fmt(be), fmt(ga)}, "aro", b, k.alpha, ga, k);
      });
      write_file(dir / "fig9_beta0_gamma.csv", rows_csv("beta0,gamma", brows));
    }
  } else if (!a.sweep_alpha.empty()) {
    const auto alphas = parse_list("--sweep-alpha", a.sweep_alpha);
    std::vector<SweepRow> rows(alphas.size());
    run_parallel(static_cast<int>(rows.size()), a.jobs, [&](int idx) {
      rows[idx] = sweep_point({fmt(alphas[idx]), fmt(k.gamma)}, "aro", inst, alphas[idx], k.gamma, k);
    });
    write_file(dir / "fig9_alpha_gamma.csv", rows_csv("alpha,gamma", rows));
  }
  if (!a.sweep_m.empty() || !a.sweep_n.empty()) {
    const auto ms = a.sweep_m.empty() ? std::vector<double>{static_cast<double>(inst.m_aps)}
                                      : parse_list("--sweep-m", a.sweep_m);
    const auto ns = a.sweep_n.empty() ? std::vector<double>{static_cast<double>(inst.n_ens)}
                                      : parse_list("--sweep-n", a.sweep_n);
    std::vector<std::pair<int, int>> sizes;
    for (double m : ms) {
      for (double n : ns) sizes.emplace_back(static_cast<int>(m), static_cast<int>(n));
    }
    std::vector<SweepRow> rows(sizes.size() * sweep_methods.size());
    run_parallel(static_cast<int>(rows.size()), a.jobs, [&](int idx) {
      const auto [m, n] = sizes[idx / sweep_methods.size()];
      GeneratorParams p;
      p.m_aps = m;
      p.n_ens = n;
      p.r_min = std::min(p.r_min, n);
      Instance g = generate_instance(p, a.gen_seed);
      if (k.beta0 >= 0.0) g.set_beta0(k.beta0);
      const double gamma = std::min(k.gamma, static_cast<double>(m));
      rows[idx] = sweep_point({std::to_string(m), std::to_string(n)},
                              sweep_methods[idx % sweep_methods.size()], g, k.alpha, gamma, k);
    });
    write_file(dir / "fig10_size.csv", rows_csv("m,n", rows));
  }

  for (const auto& m : rep.methods) {
    std::printf("%-4s objective %.6f first-stage %.6f avg total %.6f worst total %.6f max drop %.4f\n",
                m.method.c_str(), m.model_objective, m.first_stage_cost, m.total_average,
                m.total_worst, m.max_drop_ratio);
  }
  std::printf("wrote reports to %s\n", dir.string().c_str());
  if (!solved[2].converged) {
    std::fprintf(stderr, "not converged: CCG gap %s\n", fmt(solved[2].trace.final_gap).c_str());
    return kNotConverged;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust edge service placement and sizing"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate a random instance");
  g->add_option("--nodes", gen.p.n_nodes, "graph nodes")->capture_default_str();
  g->add_option("--attach", gen.p.attach_rate, "preferential-attachment rate")->capture_default_str();
  g->add_option("--aps", gen.p.m_aps, "access points M")->capture_default_str();
  g->add_option("--ens", gen.p.n_ens, "edge nodes N")->capture_default_str();
  g->add_option("--ap-pool", gen.p.ap_pool, "nodes designated as APs")->capture_default_str();
  g->add_option("--en-pool", gen.p.en_pool, "nodes designated as ENs")->capture_default_str();
  g->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  g->add_option("--budget", gen.p.budget, "budget B")->capture_default_str();
  g->add_option("--r-min", gen.p.r_min, "minimum placed ENs")->capture_default_str();
  g->add_option("--delay-cap", gen.p.delay_cap, "average delay cap D^m (ms)")->capture_default_str();
  g->add_option("--beta0", gen.p.beta0, "delay weight β₀ = β Σλ^f")->capture_default_str();
  g->add_option("--demand-scale", gen.p.demand_scale, "forecast multiplier")->capture_default_str();
  g->add_option("-o,--output", gen.output, "instance JSON path")->capture_default_str();

  std::string method;
  ModelKnobs solve_knobs;
  auto* s = app.add_subcommand("solve", "solve one model");
  s->add_option("method", method, "det | ro | aro | sp")
      ->required()
      ->check(CLI::IsMember({"det", "ro", "aro", "sp"}));
  add_model_knobs(s, solve_knobs);

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "solve every method, evaluate, emit figure data");
  add_model_knobs(c, cmp.k);
  c->add_option("--n-test", cmp.n_test, "test scenarios")->capture_default_str();
  c->add_option("--vp", cmp.v_p, "drop penalty v^p")->capture_default_str();
  c->add_option("--test-seed", cmp.test_seed, "test scenario seed")->capture_default_str();
  c->add_option("--jobs", cmp.jobs, "concurrent solves")->capture_default_str();
  c->add_option("--sweep-gamma", cmp.sweep_gamma, "comma-separated Γ values");
  c->add_option("--sweep-alpha", cmp.sweep_alpha, "comma-separated α values");
  c->add_option("--sweep-beta0", cmp.sweep_beta0, "comma-separated β₀ values");
  c->add_option("--sweep-m", cmp.sweep_m, "comma-separated AP counts (regenerated instances)");
  c->add_option("--sweep-n", cmp.sweep_n, "comma-separated EN counts (regenerated instances)");
  c->add_option("--gen-seed", cmp.gen_seed, "generator seed for size sweeps")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*s) return cmd_solve(method, solve_knobs);
    if (*c) {
      // An explicitly empty sweep list is a validation error.
      for (const auto* name : {"--sweep-gamma", "--sweep-alpha", "--sweep-beta0", "--sweep-m", "--sweep-n"}) {
        const auto* opt = c->get_option(name);
        if (opt->count() > 0) parse_list(name, opt->as<std::string>());
      }
      return cmd_compare(cmp);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const UnsupportedEnumerationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const ModelInfeasibleError& e) {
    std::fprintf(stderr, "infeasible (%s): %s\n", e.constraint_class().c_str(), e.what());
    return kInfeasible;
  } catch (const RobustInfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kInfeasible;
  } catch (const TimeoutError& e) {
    std::fprintf(stderr, "not converged: %s\n", e.what());
    return kNotConverged;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kSolverFailure;
  }
  return kValidation;
}
