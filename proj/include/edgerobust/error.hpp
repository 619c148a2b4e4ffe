#pragma once

#include <stdexcept>
#include <string>

namespace edgerobust {

// Base of every error raised by the library. The CLI maps each subclass to a
// distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied parameters (inverted ranges, Γ > M, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed instance / scenario file. The message names the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A formulation has no feasible point. `constraint_class` names the family of
// constraints that is the most likely culprit (budget, delay, reliability...).
class ModelInfeasibleError : public Error {
 public:
  ModelInfeasibleError(const std::string& what, std::string constraint_class)
      : Error(what), constraint_class_(std::move(constraint_class)) {}
  const std::string& constraint_class() const { return constraint_class_; }

 private:
  std::string constraint_class_;
};

// The second stage is infeasible for some demand in the uncertainty set.
class RobustInfeasibleError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown inside the bundled LP/MILP engine.
class SolverError : public Error {
 public:
  using Error::Error;
};

// MILP time limit hit before any incumbent was found.
class TimeoutError : public Error {
 public:
  TimeoutError(const std::string& what, double best_bound)
      : Error(what), best_bound_(best_bound) {}
  double best_bound() const { return best_bound_; }

 private:
  double best_bound_;
};

// Extreme-point enumeration requested for a set that is too large or has a
// fractional budget.
class UnsupportedEnumerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace edgerobust
