#include <algorithm>
#include <cmath>
#include <limits>

#include "edgerobust/error.hpp"
#include "edgerobust/solver/solve.hpp"
#include "scaled_form.hpp"
#include "simplex_engine.hpp"

namespace edgerobust::solver {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

namespace detail {
namespace {

// Entries this far below the largest in their row or column do not pull the
// geometric mean, so a noise-level coefficient cannot blow up a scale factor.
constexpr double kScaleFloor = 1e-6;

double pow2_near(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) return 1.0;
  return std::exp2(std::round(std::log2(x)));
}

}  // namespace

ScaledForm build_scaled_form(const MilpModel& model, bool scale) {
  const int m = model.num_constraints();
  const int n = model.num_variables();
  ScaledForm sf;
  sf.col_scale.assign(n, 1.0);
  sf.row_scale.assign(m, 1.0);
  sf.sense_sign = model.sense() == Sense::kMaximize ? -1.0 : 1.0;
  sf.offset = model.objective_offset();

  if (scale) {
    for (int pass = 0; pass < 4; ++pass) {
      for (int i = 0; i < m; ++i) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (const auto& t : model.constraint(i).terms) {
          const double a = std::abs(t.coef) * sf.col_scale[t.var];
          if (a == 0.0) continue;
          lo = std::min(lo, a);
          hi = std::max(hi, a);
        }
        if (hi > 0.0) sf.row_scale[i] = pow2_near(1.0 / std::sqrt(std::max(lo, kScaleFloor * hi) * hi));
      }
      std::vector<double> lo(n, std::numeric_limits<double>::infinity());
      std::vector<double> hi(n, 0.0);
      for (int i = 0; i < m; ++i) {
        for (const auto& t : model.constraint(i).terms) {
          const double a = std::abs(t.coef) * sf.row_scale[i];
          if (a == 0.0) continue;
          lo[t.var] = std::min(lo[t.var], a);
          hi[t.var] = std::max(hi[t.var], a);
        }
      }
      for (int j = 0; j < n; ++j) {
        if (model.variable(j).integer || hi[j] == 0.0) continue;
        sf.col_scale[j] = pow2_near(1.0 / std::sqrt(std::max(lo[j], kScaleFloor * hi[j]) * hi[j]));
      }
    }
  }

  StandardForm& f = sf.form;
  f.rows = m;
  f.cols = n;
  f.a.assign(static_cast<size_t>(m) * n, 0.0);
  f.rhs.resize(m);
  f.cost.resize(n);
  f.lower.resize(n + m);
  f.upper.resize(n + m);
  for (int i = 0; i < m; ++i) {
    const auto& c = model.constraint(i);
    for (const auto& t : c.terms) {
      f.a[static_cast<size_t>(i) * n + t.var] += t.coef * sf.row_scale[i] * sf.col_scale[t.var];
    }
    f.rhs[i] = c.rhs * sf.row_scale[i];
    switch (c.relation) {
      case Relation::kLessEqual:
        f.lower[n + i] = 0.0;
        f.upper[n + i] = kInfinity;
        break;
      case Relation::kGreaterEqual:
        f.lower[n + i] = -kInfinity;
        f.upper[n + i] = 0.0;
        break;
      case Relation::kEqual:
        f.lower[n + i] = 0.0;
        f.upper[n + i] = 0.0;
        break;
    }
  }
  double cmax = 0.0;
  for (int j = 0; j < n; ++j) {
    const auto& v = model.variable(j);
    f.cost[j] = sf.sense_sign * v.objective * sf.col_scale[j];
    cmax = std::max(cmax, std::abs(f.cost[j]));
    f.lower[j] = v.lower / sf.col_scale[j];
    f.upper[j] = v.upper / sf.col_scale[j];
  }
  if (scale && cmax > 0.0) sf.obj_scale = pow2_near(1.0 / cmax);
  for (double& c : f.cost) c *= sf.obj_scale;
  return sf;
}

LpSolution extract_solution(const SimplexEngine& engine, const ScaledForm& sf,
                            const MilpModel& model) {
  const int n = model.num_variables();
  const int m = model.num_constraints();
  LpSolution sol;
  sol.status = SolveStatus::kOptimal;
  sol.values.resize(n);
  sol.reduced_costs.resize(n);
  for (int j = 0; j < n; ++j) {
    double x = engine.value(j) * sf.col_scale[j];
    // Snap onto bounds hit by the basis to remove scaling round-off.
    const auto& v = model.variable(j);
    if (engine.state(j) == VarState::kAtLower) x = v.lower;
    if (engine.state(j) == VarState::kAtUpper) x = v.upper;
    sol.values[j] = x;
    sol.reduced_costs[j] =
        sf.sense_sign * engine.reduced_cost(j) / (sf.obj_scale * sf.col_scale[j]);
  }
  const std::vector<double> y = engine.row_duals();
  sol.duals.resize(m);
  for (int i = 0; i < m; ++i) {
    sol.duals[i] = sf.sense_sign * y[i] * sf.row_scale[i] / sf.obj_scale;
  }
  sol.objective = model.evaluate_objective(sol.values);
  sol.iterations = engine.iterations();
  return sol;
}

}  // namespace detail

LpSolution solve_lp(const MilpModel& model, const LpOptions& options) {
  model.validate(false);
  detail::ScaledForm sf = detail::build_scaled_form(model, options.scale);
  detail::SimplexEngine engine(sf.form, options);
  const auto result = engine.solve_primal();
  LpSolution sol;
  switch (result) {
    case detail::SimplexEngine::Result::kOptimal:
      return detail::extract_solution(engine, sf, model);
    case detail::SimplexEngine::Result::kInfeasible:
      sol.status = SolveStatus::kInfeasible;
      break;
    case detail::SimplexEngine::Result::kUnbounded:
      sol.status = SolveStatus::kUnbounded;
      break;
    case detail::SimplexEngine::Result::kIterationLimit:
      throw SolverError("simplex iteration limit reached");
  }
  sol.iterations = engine.iterations();
  return sol;
}

}  // namespace edgerobust::solver
