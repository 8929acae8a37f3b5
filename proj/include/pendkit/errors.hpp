#pragma once

#include <stdexcept>
#include <string>

namespace pendkit {

/// Invalid argument to an operation (p <= 1, bad grid bounds, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the domain of a model (r < r_min, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Tabulated data requested beyond its sample range.
struct ExtrapolationError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Tabulated data too sparse near the evaluation point.
struct DiscretizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-finite integrand, quadrature budget exceeded, inconsistent sequences.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Degenerate geometry (vanishing conductance and the like).
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition on function values.
struct ContractError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iterative solver failed to reach its tolerance within the iteration cap.
struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual_, long iterations_)
      : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
  double residual;
  long iterations;
};

/// A lower-bound lemma was applied where its hypothesis fails.
struct BoundInapplicableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Text input could not be parsed; message carries file and line.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A combination of certified facts that the theory rules out.
/// Firing indicates an implementation bug or a probe overestimate.
struct TheoremViolationError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace pendkit
