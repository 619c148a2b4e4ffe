#pragma once

#include <vector>

#include "edgerobust/solver/model.hpp"
#include "edgerobust/solver/solve.hpp"
#include "simplex_engine.hpp"

namespace edgerobust::solver::detail {

// A model converted to the engine's minimization standard form with
// power-of-two equilibration. Engine variable x̃_j = x_j / col_scale[j];
// engine slack s̃_r = row_scale[r] * (rhs_r - a_r·x); engine objective
// z̃ = obj_scale * (±model objective without offset).
struct ScaledForm {
  StandardForm form;
  std::vector<double> col_scale;
  std::vector<double> row_scale;
  double obj_scale = 1.0;
  double sense_sign = 1.0;  // -1 for maximization
  double offset = 0.0;
};

// Integer columns are never scaled so branching bounds stay integral.
ScaledForm build_scaled_form(const MilpModel& model, bool scale);

// Model-space values, objective, duals and reduced costs of the engine's
// current basis.
LpSolution extract_solution(const SimplexEngine& engine, const ScaledForm& sf,
                            const MilpModel& model);

}  // namespace edgerobust::solver::detail
