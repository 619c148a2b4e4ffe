#include "edgerobust/solver/model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "edgerobust/error.hpp"

namespace edgerobust::solver {

int MilpModel::add_variable(std::string name, double lower, double upper,
                            double objective, bool integer) {
  vars_.push_back({std::move(name), lower, upper, integer, objective});
  return static_cast<int>(vars_.size()) - 1;
}

int MilpModel::add_constraint(std::vector<Term> terms, Relation relation,
                              double rhs, std::string name) {
  cons_.push_back({std::move(terms), relation, rhs, std::move(name)});
  return static_cast<int>(cons_.size()) - 1;
}

int MilpModel::num_integers() const {
  return static_cast<int>(std::count_if(
      vars_.begin(), vars_.end(), [](const Variable& v) { return v.integer; }));
}

void MilpModel::validate(bool require_bounded_integers) const {
  for (const auto& v : vars_) {
    if (std::isnan(v.lower) || std::isnan(v.upper) || !std::isfinite(v.objective)) {
      throw SolverError("variable '" + v.name + "' has NaN bound or objective");
    }
    if (v.lower > v.upper) {
      throw SolverError("variable '" + v.name + "' has lower > upper");
    }
    if (require_bounded_integers && v.integer &&
        (!std::isfinite(v.lower) || !std::isfinite(v.upper))) {
      throw SolverError("integer variable '" + v.name + "' must be bounded");
    }
  }
  for (const auto& c : cons_) {
    if (!std::isfinite(c.rhs)) {
      throw SolverError("constraint '" + c.name + "' has non-finite rhs");
    }
    for (const auto& t : c.terms) {
      if (t.var < 0 || t.var >= num_variables()) {
        throw SolverError("constraint '" + c.name + "' references unknown variable");
      }
      if (!std::isfinite(t.coef)) {
        throw SolverError("constraint '" + c.name + "' has non-finite coefficient");
      }
    }
  }
}

double MilpModel::evaluate_objective(const std::vector<double>& values) const {
  double z = objective_offset_;
  for (int j = 0; j < num_variables(); ++j) z += vars_[j].objective * values[j];
  return z;
}

double MilpModel::row_activity(int row, const std::vector<double>& values) const {
  double a = 0.0;
  for (const auto& t : cons_[row].terms) a += t.coef * values[t.var];
  return a;
}

double MilpModel::max_violation(const std::vector<double>& values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, vars_[j].lower - values[j]);
    worst = std::max(worst, values[j] - vars_[j].upper);
  }
  for (int i = 0; i < num_constraints(); ++i) {
    const double a = row_activity(i, values);
    const double b = cons_[i].rhs;
    switch (cons_[i].relation) {
      case Relation::kLessEqual: worst = std::max(worst, a - b); break;
      case Relation::kGreaterEqual: worst = std::max(worst, b - a); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(a - b)); break;
    }
  }
  return worst;
}

namespace {

void write_terms(std::ostream& out, const std::vector<Term>& terms,
                 const std::vector<Variable>& vars) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  for (const auto& t : terms) {
    out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << ' '
        << vars[t.var].name;
  }
}

}  // namespace

void MilpModel::write_lp(std::ostream& out) const {
  out << (sense_ == Sense::kMinimize ? "Minimize\n" : "Maximize\n") << " obj:";
  std::vector<Term> obj;
  for (int j = 0; j < num_variables(); ++j) {
    if (vars_[j].objective != 0.0) obj.push_back({j, vars_[j].objective});
  }
  write_terms(out, obj, vars_);
  if (objective_offset_ != 0.0) out << " + " << objective_offset_;
  out << "\nSubject To\n";
  for (const auto& c : cons_) {
    out << ' ' << c.name << ':';
    write_terms(out, c.terms, vars_);
    switch (c.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    out << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : vars_) {
    out << ' ';
    if (std::isinf(v.lower) && std::isinf(v.upper)) {
      out << v.name << " free\n";
      continue;
    }
    if (std::isinf(v.lower)) out << "-inf"; else out << v.lower;
    out << " <= " << v.name << " <= ";
    if (std::isinf(v.upper)) out << "+inf"; else out << v.upper;
    out << '\n';
  }
  bool any = false;
  for (const auto& v : vars_) {
    if (!v.integer) continue;
    if (!any) out << "General\n";
    any = true;
    out << ' ' << v.name << '\n';
  }
  out << "End\n";
}

}  // namespace edgerobust::solver
