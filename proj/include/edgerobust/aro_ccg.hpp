#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "edgerobust/instance.hpp"
#include "edgerobust/plan.hpp"
#include "edgerobust/solver/model.hpp"
#include "edgerobust/solver/solve.hpp"
#include "edgerobust/uncertainty.hpp"

namespace edgerobust {

// Capacity vector: y[0] is the cloud, y[j] for j = 1..N.
using Sizing = std::vector<double>;
Sizing sizing_of(const FirstStagePlan& plan);

// The maximum-demand vertex: g = 1 on the ⌊Γ⌋ largest deviations, the
// fractional remainder on the next one; ties go to the lowest AP index.
DemandScenario initial_scenario(const UncertaintySet& u);

// ---- second stage -------------------------------------------------------

struct InnerResult {
  bool feasible = false;
  double delay = 0.0;     // Σ d x, request·ms
  double objective = 0.0; // β · delay
  Allocation allocation;
};

// min β Σ d x over allocations of `lambda` into capacities y, subject to the
// average-delay cap. With `delay_cap` false the cap row is dropped.
InnerResult solve_inner(const Instance& inst, const Sizing& y, const std::vector<double>& lambda,
                        bool delay_cap = true);

// ---- master ---------------------------------------------------------------

struct MasterSolution {
  FirstStagePlan plan;
  double eta = 0.0;
  double lower_bound = 0.0;
  int64_t nodes = 0;
  double seconds = 0.0;
};

// First stage, epigraph η and one allocation copy per scenario.
solver::MilpModel build_master(const Instance& inst, const std::vector<DemandScenario>& scenarios);

// Throws ModelInfeasibleError when the pool admits no plan.
MasterSolution solve_master(const Instance& inst, const std::vector<DemandScenario>& scenarios,
                            const solver::MilpOptions& options = {});

// ---- KKT subproblem -------------------------------------------------------

// Big-M constants of the linearized complementarity pairs. Primal sides are in
// requests (capacity slacks as y/w, delay slack in request·ms); the dual side
// bounds the scaled duals wπ/β, μ/β, σ/β and the reduced costs (ms).
struct BigM {
  std::vector<double> flow;  // λ^f_i + λ̂_i, for x_{i,0} and every x_{i,j}
  double cloud = 0.0;        // y_0 / w
  std::vector<double> edge;  // y_j / w
  double delay = 0.0;        // D^m Σ(λ^f + λ̂)
  double dual_cap = 0.0;
};

BigM bigm_bounds(const Instance& inst, const UncertaintySet& u, const Sizing& y);

enum class SubproblemKind {
  kWorstDelay,   // max over D of the inner optimum
  kFeasibility,  // max over D of (min Σdx − D^m Σλ), no delay-cap row
};

struct SubproblemVars {
  std::vector<int> t;
  std::vector<int> x0;
  std::vector<std::vector<int>> x;
  int pi0 = -1;
  std::vector<int> pi;
  int mu = -1;
  std::vector<int> sigma;
  std::vector<int> u0;
  std::vector<std::vector<int>> u1;
  int u2 = -1;
  std::vector<int> u3;
  int u4 = -1;
};

solver::MilpModel build_subproblem(const Instance& inst, const UncertaintySet& u, const Sizing& y,
                                   const BigM& bigm,
                                   SubproblemKind kind = SubproblemKind::kWorstDelay,
                                   SubproblemVars* vars = nullptr);

struct SubproblemSolution {
  DemandScenario worst_demand;
  Allocation allocation;
  // Duals in the inner problem's own units.
  double pi0 = 0.0;
  std::vector<double> pi;
  double mu = 0.0;
  std::vector<double> sigma;
  std::vector<int> u0;
  std::vector<std::vector<int>> u1;
  int u2 = 0;
  std::vector<int> u3;
  int u4 = 0;
  // kWorstDelay: Q(y) = β · worst-case delay. kFeasibility: the largest
  // violation of the delay cap, request·ms (> 0 means y is not robust).
  double objective = 0.0;
  // False when no demand in D admits a feasible second stage.
  bool feasible = true;
  BigM bigm;
  int escalations = 0;
  bool purified = false;
  double max_complementarity = 0.0;
  int64_t nodes = 0;
  double seconds = 0.0;
};

struct SubproblemOptions {
  static solver::MilpOptions default_milp() {
    solver::MilpOptions o;
    o.gap_tol = 1e-7;
    o.absolute_gap = 1e-7;
    return o;
  }
  solver::MilpOptions milp = default_milp();
  int max_escalations = 3;
  // Relative gap of the KKT value against a direct solve of the inner LP.
  double audit_tol = 1e-6;
};

// Throws SolverError when an audit fails or the dual cap stays active after
// `max_escalations` ten-fold increases.
SubproblemSolution solve_subproblem(const Instance& inst, const UncertaintySet& u, const Sizing& y,
                                    const SubproblemOptions& options = {},
                                    SubproblemKind kind = SubproblemKind::kWorstDelay);

// ---- column-and-constraint generation -----------------------------------

struct CcgIteration {
  int k = 0;
  DemandScenario scenario;  // λ^{*,k}; appended to the pool unless the loop stops here
  double lb = 0.0;
  double ub = 0.0;
  double master_ms = 0.0;
  double sub_ms = 0.0;
  bool feasibility_cut = false;
};

enum class CcgStatus { kConverged, kRepeatedScenario, kMaxIterations };
const char* to_string(CcgStatus status);

struct CcgTrace {
  std::vector<CcgIteration> iterations;
  std::vector<DemandScenario> pool;
  double final_gap = 0.0;
  CcgStatus status = CcgStatus::kMaxIterations;
};

struct CcgOptions {
  double epsilon = 1e-4;
  int max_iter = 50;
  solver::MilpOptions master;
  SubproblemOptions subproblem;
};

struct CcgResult {
  FirstStagePlan plan;
  double objective = 0.0;   // UB: plan cost + Q(y)
  double worst_delay_cost = 0.0;
  CcgTrace trace;
  bool converged() const { return trace.status != CcgStatus::kMaxIterations; }
};

// Throws RobustInfeasibleError when no plan serves every λ ∈ D within the
// delay cap, ModelInfeasibleError when even the first scenario admits none.
CcgResult ccg_solve(const Instance& inst, const UncertaintySet& u, const CcgOptions& options = {});

// `iter,LB,UB,gap,master_ms,sub_ms`
void write_trace_csv(const CcgTrace& trace, const std::string& path);
std::string trace_scenarios_json(const CcgTrace& trace);

struct ExtensiveResult {
  FirstStagePlan plan;
  double objective = 0.0;
  int64_t vertices = 0;
};

// Master over every vertex of D. Throws UnsupportedEnumerationError beyond
// `vertex_limit` vertices or for fractional Γ.
ExtensiveResult extensive_form(const Instance& inst, const UncertaintySet& u,
                               const solver::MilpOptions& options = {},
                               int64_t vertex_limit = 4096);

}  // namespace edgerobust
