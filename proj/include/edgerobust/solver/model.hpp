#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace edgerobust::solver {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool integer = false;
  double objective = 0.0;
};

struct Term {
  int var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

// A linear model with optional integrality. Variables and constraints are
// addressed by the dense index returned when they are added.
class MilpModel {
 public:
  MilpModel() = default;
  explicit MilpModel(Sense sense) : sense_(sense) {}

  int add_variable(std::string name, double lower, double upper,
                   double objective = 0.0, bool integer = false);
  int add_binary(std::string name, double objective = 0.0) {
    return add_variable(std::move(name), 0.0, 1.0, objective, true);
  }
  int add_constraint(std::vector<Term> terms, Relation relation, double rhs,
                     std::string name);

  void set_sense(Sense sense) { sense_ = sense; }
  void set_objective(int var, double coef) { vars_[var].objective = coef; }
  void set_objective_offset(double offset) { objective_offset_ = offset; }

  Sense sense() const { return sense_; }
  double objective_offset() const { return objective_offset_; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  const Variable& variable(int i) const { return vars_[i]; }
  const Constraint& constraint(int i) const { return cons_[i]; }
  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(cons_.size()); }
  int num_integers() const;
  bool has_integers() const { return num_integers() > 0; }

  // Throws SolverError on NaN/inf coefficients, inverted bounds, or (when
  // `require_bounded_integers`) an integer variable with an infinite bound.
  void validate(bool require_bounded_integers) const;

  // Objective value of `values` including the constant offset.
  double evaluate_objective(const std::vector<double>& values) const;
  double row_activity(int row, const std::vector<double>& values) const;
  // Largest violation of any row or bound by `values`.
  double max_violation(const std::vector<double>& values) const;

  // Write-only debugging dump in a CPLEX-LP-like text format.
  void write_lp(std::ostream& out) const;

 private:
  Sense sense_ = Sense::kMinimize;
  double objective_offset_ = 0.0;
  std::vector<Variable> vars_;
  std::vector<Constraint> cons_;
};

}  // namespace edgerobust::solver
