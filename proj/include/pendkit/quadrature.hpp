#pragma once

#include <functional>
#include <limits>
#include <string>

namespace pendkit {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  // Hard budget on subdivisions; guards against runaway refinement on
  // near-singular custom inputs.
  long max_intervals = 1L << 20;
};

/// Adaptive Simpson integration of f over [a, b] to relative tolerance.
/// Throws NumericError on a non-finite integrand or an exhausted budget.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts = {});

struct ImproperOptions {
  double rel_tol = 1e-10;
  // Increment below finite_cutoff * total on a window ends the integral.
  double finite_cutoff = 1e-12;
  // Divergence: `consecutive` non-decaying window increments, each above
  // diverge_ratio * running total, or the total passing blowup_total.
  double diverge_ratio = 1e-3;
  double blowup_total = 1e12;
  int consecutive = 5;
  int max_windows = 512;
  // Windows are clipped here (finite for tabulated geometries).  When the
  // domain ends before a decision, the trend at the cut decides; an
  // ambiguous trend raises ExtrapolationError.
  double domain_end = std::numeric_limits<double>::infinity();
};

struct ImproperResult {
  double value = 0.0;  ///< accumulated integral; meaningful when finite
  bool finite = false;
  double last_increment = 0.0;
  int windows = 0;
  std::string trace;  ///< one line per window, for evidence reports
};

/// Integral of f over [a, domain_end) on doubling windows [a*2^k, a*2^{k+1}]
/// with the convergence/divergence rules above.  Requires a > 0.
ImproperResult improper_integral(const std::function<double(double)>& f, double a,
                                 const ImproperOptions& opts = {});

}  // namespace pendkit
