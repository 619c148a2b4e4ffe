#pragma once

// Second-stage LP in request units: capacity rows read Σ x <= y / w.

#include <vector>

#include "edgerobust/aro_ccg.hpp"
#include "edgerobust/solver/model.hpp"

namespace edgerobust::detail {

struct InnerLp {
  solver::MilpModel model;
  std::vector<int> x0;
  std::vector<std::vector<int>> x;
  std::vector<int> flow_rows;
  std::vector<int> cap_rows;  // cloud first
  int delay_row = -1;
};

// Objective Σ d x (not scaled by β).
InnerLp build_inner_lp(const Instance& inst, const Sizing& y, const std::vector<double>& lambda,
                       bool delay_cap);

}  // namespace edgerobust::detail
