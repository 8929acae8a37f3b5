#pragma once

#include "pendkit/grid.hpp"
#include "pendkit/model.hpp"

namespace pendkit {

/// Discrete minimizer of the weighted p-energy with fixed boundary values:
/// damped Newton on the flux-balance equations A |u'|^{p-2} u' = const,
/// converged when the relative flux defect drops below 1e-10.
/// Throws ConvergenceError past the iteration cap (1e4).
RadialFunction solve_p_dirichlet(const ModelManifold& model, double p, const Grid& grid,
                                 double bc_lo, double bc_hi);

struct SpectralResult {
  double lambda = 0.0;
  RadialFunction eigenfunction;  ///< normalized to integral A |u|^p = 1
  double residual = 0.0;         ///< sup-norm Euler-Lagrange defect, relative
  long iterations = 0;
  bool converged = false;
};

struct RayleighOptions {
  /// Dirichlet condition at the left grid end; when false the left end is
  /// free (the natural condition, i.e. regularity at a ball center).
  bool dirichlet_left = false;
  long max_iterations = 100000;
  /// Stop when the quotient decreases by less than this, relatively,
  /// over `stall_window` iterations.
  double stall_rel = 1e-12;
  int stall_window = 50;
  /// `converged` additionally requires the final (unregularized) residual
  /// to sit below this.
  double residual_tol = 1e-6;
};

/// Ground state of the weighted Rayleigh quotient
/// (integral A |u'|^p) / (integral A |u|^p) with u = 0 at the right end:
/// projected-gradient descent in a stiffness-preconditioned metric with
/// Armijo backtracking.  Eigenfunctions are returned nonnegative with unit
/// weighted p-norm.  Throws ConvergenceError past the iteration cap.
SpectralResult p_rayleigh_minimize(const ModelManifold& model, double p,
                                   const Grid& grid, const RayleighOptions& opts = {});

/// Discrete quotient of an arbitrary nodal vector on the given grid.
double rayleigh_quotient(const ModelManifold& model, double p, const Grid& grid,
                         const std::vector<double>& u);

}  // namespace pendkit
