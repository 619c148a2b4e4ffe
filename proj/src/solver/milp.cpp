#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>

#include "edgerobust/error.hpp"
#include "edgerobust/solver/solve.hpp"
#include "scaled_form.hpp"
#include "simplex_engine.hpp"

namespace edgerobust::solver {
namespace {

using detail::Basis;
using detail::SimplexEngine;
using detail::VarState;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BoundChange {
  int var;
  double lower;
  double upper;
};

struct Node {
  double bound;  // parent LP bound, engine units
  int64_t id;
  std::vector<BoundChange> changes;
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const MilpOptions& options)
      : model_(model),
        opt_(options),
        sf_(detail::build_scaled_form(model, options.lp.scale)),
        engine_(sf_.form, options.lp) {
    for (int j = 0; j < model.num_variables(); ++j) {
      if (!model.variable(j).integer) continue;
      ints_.push_back(j);
    }
    root_lower_.resize(model.num_variables());
    root_upper_.resize(model.num_variables());
    for (int j : ints_) {
      const auto& v = model.variable(j);
      root_lower_[j] = std::ceil(v.lower - options.integrality_tol);
      root_upper_[j] = std::floor(v.upper + options.integrality_tol);
      engine_.set_bounds(j, root_lower_[j], root_upper_[j]);
    }
  }

  MilpSolution run();

 private:
  double to_model(double z) const { return sf_.sense_sign * z / sf_.obj_scale + sf_.offset; }
  double cutoff() const {
    if (!std::isfinite(incumbent_)) return kInf;
    const double tol = std::max(opt_.absolute_gap, opt_.gap_tol * std::abs(to_model(incumbent_)));
    return incumbent_ - tol * sf_.obj_scale;
  }
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  void reduced_cost_fixing(double z, std::vector<BoundChange>& changes);
  int pick_branch_var() const;
  void load_node(const Node& node);
  MilpSolution finish(SolveStatus status, double bound);

  const MilpModel& model_;
  MilpOptions opt_;
  detail::ScaledForm sf_;
  SimplexEngine engine_;
  std::vector<int> ints_;
  std::vector<double> root_lower_;
  std::vector<double> root_upper_;
  double incumbent_ = kInf;
  std::vector<double> incumbent_values_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  int64_t nodes_ = 0;
};

void BranchAndBound::reduced_cost_fixing(double z, std::vector<BoundChange>& changes) {
  const double room = cutoff() - z;
  if (!std::isfinite(room) || room <= 0.0) return;
  for (int j : ints_) {
    if (engine_.is_basic(j)) continue;
    const double lo = engine_.lower(j);
    const double hi = engine_.upper(j);
    if (lo == hi) continue;
    const double d = engine_.reduced_cost(j);
    if (engine_.state(j) == VarState::kAtLower && d > 1e-12) {
      const double nh = lo + std::floor(room / d + 1e-9);
      if (nh < hi) {
        engine_.set_bounds(j, lo, nh);
        changes.push_back({j, lo, nh});
      }
    } else if (engine_.state(j) == VarState::kAtUpper && d < -1e-12) {
      const double nl = hi - std::floor(room / -d + 1e-9);
      if (nl > lo) {
        engine_.set_bounds(j, nl, hi);
        changes.push_back({j, nl, hi});
      }
    }
  }
}

int BranchAndBound::pick_branch_var() const {
  int best = -1;
  double best_dist = opt_.integrality_tol;
  for (int j : ints_) {
    const double x = engine_.value(j);
    const double dist = std::abs(x - std::round(x));
    if (dist > best_dist) {
      best_dist = dist;
      best = j;
    }
  }
  return best;
}

void BranchAndBound::load_node(const Node& node) {
  for (int j : ints_) engine_.set_bounds(j, root_lower_[j], root_upper_[j]);
  for (const auto& c : node.changes) engine_.set_bounds(c.var, c.lower, c.upper);
  engine_.load_basis(*node.basis);
}

MilpSolution BranchAndBound::finish(SolveStatus status, double bound) {
  MilpSolution sol;
  sol.status = status;
  sol.nodes = nodes_;
  sol.lp_iterations = engine_.iterations();
  if (!incumbent_values_.empty()) {
    std::vector<double> x = incumbent_values_;
    for (int j : ints_) x[j] = std::round(x[j]);
    MilpModel polish(model_.sense());
    polish.set_objective_offset(model_.objective_offset());
    for (int j = 0; j < model_.num_variables(); ++j) {
      const auto& v = model_.variable(j);
      if (v.integer) polish.add_variable(v.name, x[j], x[j], v.objective);
      else polish.add_variable(v.name, v.lower, v.upper, v.objective);
    }
    for (const auto& c : model_.constraints()) polish.add_constraint(c.terms, c.relation, c.rhs, c.name);
    LpSolution lp = solve_lp(polish, opt_.lp);
    if (lp.status == SolveStatus::kOptimal) x = lp.values;
    sol.values = std::move(x);
    sol.objective = model_.evaluate_objective(sol.values);
  }
  sol.best_bound = std::isfinite(bound) ? to_model(bound) : bound;
  if (status == SolveStatus::kOptimal && sol.has_incumbent()) {
    // The proven bound cannot exceed the incumbent.
    if (model_.sense() == Sense::kMinimize) sol.best_bound = std::min(sol.best_bound, sol.objective);
    else sol.best_bound = std::max(sol.best_bound, sol.objective);
  }
  sol.seconds = elapsed();
  return sol;
}

MilpSolution BranchAndBound::run() {
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  int64_t next_id = 1;
  double pruned_bound = kInf;  // smallest bound among nodes discarded by the cutoff
  Node current{-kInf, 0, {}, nullptr};
  bool root = true;

  while (true) {
    const bool out_of_time = elapsed() > opt_.time_limit ||
                             (opt_.node_limit >= 0 && nodes_ >= opt_.node_limit);
    if (out_of_time) {
      double bound = std::min(current.bound, pruned_bound);
      if (!open.empty()) bound = std::min(bound, open.top().bound);
      bound = std::min(bound, incumbent_);
      if (incumbent_values_.empty()) {
        throw TimeoutError("MILP time limit reached without an incumbent",
                           std::isfinite(bound) ? to_model(bound) : bound);
      }
      return finish(SolveStatus::kTimeLimit, bound);
    }

    ++nodes_;
    const auto res = root ? engine_.solve_primal() : engine_.reoptimize();
    bool fathomed = true;
    if (res == SimplexEngine::Result::kUnbounded) {
      if (root) return finish(SolveStatus::kUnbounded, -kInf);
      throw SolverError("node relaxation unbounded after a bounded root");
    }
    if (res == SimplexEngine::Result::kIterationLimit) {
      throw SolverError("simplex iteration limit reached in branch and bound");
    }
    if (res == SimplexEngine::Result::kOptimal) {
      const double z = engine_.objective();
      if (z >= cutoff()) {
        pruned_bound = std::min(pruned_bound, z);
      } else {
        reduced_cost_fixing(z, current.changes);
        const int j = pick_branch_var();
        if (j < 0) {
          incumbent_ = z;
          incumbent_values_.resize(model_.num_variables());
          for (int k = 0; k < model_.num_variables(); ++k) {
            incumbent_values_[k] = engine_.value(k) * sf_.col_scale[k];
          }
        } else {
          const double x = engine_.value(j);
          const double fl = std::floor(x);
          const double lo = engine_.lower(j);
          const double hi = engine_.upper(j);
          Node down{z, 0, current.changes, nullptr};
          down.changes.push_back({j, lo, fl});
          Node up{z, 0, current.changes, nullptr};
          up.changes.push_back({j, fl + 1.0, hi});
          const bool dive_up = x - fl >= 0.5;
          Node& other = dive_up ? down : up;
          Node& dive = dive_up ? up : down;
          other.id = next_id++;
          other.basis = std::make_shared<const Basis>(engine_.basis());
          open.push(std::move(other));
          dive.id = next_id++;
          const BoundChange& c = dive.changes.back();
          engine_.set_bounds(c.var, c.lower, c.upper);
          current = std::move(dive);
          fathomed = false;
        }
      }
    }
    root = false;
    if (!fathomed) continue;

    // Pick the best open node.
    while (!open.empty() && open.top().bound >= cutoff()) {
      pruned_bound = std::min(pruned_bound, open.top().bound);
      open.pop();
    }
    if (open.empty()) break;
    current = open.top();
    open.pop();
    load_node(current);
  }

  if (incumbent_values_.empty()) return finish(SolveStatus::kInfeasible, kInf);
  return finish(SolveStatus::kOptimal, std::min(pruned_bound, incumbent_));
}

}  // namespace

MilpSolution solve_milp(const MilpModel& model, const MilpOptions& options) {
  model.validate(true);
  BranchAndBound bb(model, options);
  return bb.run();
}

}  // namespace edgerobust::solver
