#ifndef SCM_ERRORS_HPP
#define SCM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scm {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidDimensionError : Error {
  using Error::Error;
};

struct NumericInputError : Error {
  using Error::Error;
};

struct DecompositionError : Error {
  using Error::Error;
};

struct InvalidOrbitError : Error {
  using Error::Error;
};

/// Moment/chart constraint violated; carries the worst offending index.
struct ConstraintError : Error {
  int index;
  double residual;
  ConstraintError(const std::string& msg, int idx, double res)
      : Error(msg), index(idx), residual(res) {}
};

struct SingularDenominatorError : Error {
  int root_i, root_j;  // 1-based root labels
  SingularDenominatorError(const std::string& msg, int i, int j)
      : Error(msg), root_i(i), root_j(j) {}
};

/// Factorization degenerated (singular value / eigenvalue collision).
struct ChamberWallError : Error {
  double time;
  ChamberWallError(const std::string& msg, double t) : Error(msg), time(t) {}
};

struct OffChartError : Error {
  using Error::Error;
};

struct DivergenceError : Error {
  double time;
  DivergenceError(const std::string& msg, double t) : Error(msg), time(t) {}
};

struct ComparisonError : Error {
  using Error::Error;
};

struct ScenarioError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace scm

#endif
