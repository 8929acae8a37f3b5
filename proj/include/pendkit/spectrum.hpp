#pragma once

#include <utility>
#include <vector>

#include "pendkit/discrete_solver.hpp"
#include "pendkit/model.hpp"

namespace pendkit {

/// First Dirichlet eigenvalue of the ball of radius R: the Rayleigh
/// minimizer on a full-ball grid (2049 nodes, uniform), Dirichlet at R and
/// the natural condition at the inner end.
SpectralResult lambda_ball(const ModelManifold& model, double p, double R);

struct SpectrumReport {
  std::vector<std::pair<double, double>> lambda_balls;  ///< (R, lambda(B_R))
  double lambda_limit = 0.0;  ///< extrapolated bottom of the spectrum
  double error_bar = 0.0;
  double lower_bound = 0.0;  ///< divergence-field bound (inf Delta r / p)^p
  double upper_bound = 0.0;  ///< growth bound (a/p)^p
  double bk_gap = 0.0;       ///< a - p lambda^{1/p}
  bool consistent = false;
};

/// Exhaustion limit of lambda(B_R) over an increasing R list (length >= 3):
/// power-law extrapolation in 1/R, falling back to the last value with the
/// last decrement as error bar.  Enforces domain monotonicity.
SpectrumReport lambda_manifold(const ModelManifold& model, double p,
                               const std::vector<double>& R_list);

/// (inf of Delta r over [r0, R])^p / p^p; the infimum is taken by dense
/// sampling, or at R directly for the built-ins whose Delta r decreases.
/// Throws BoundInapplicableError when Delta r is not positive throughout.
double divergence_lower_bound(const ModelManifold& model, double p, double r0, double R);

/// (a/p)^p from the fitted volume-growth rate; 0 in the polynomial regime,
/// where the bottom of the spectrum vanishes.
double cheng_upper_bound(const ModelManifold& model, double p, double r_max);

/// a - p lambda^{1/p}: nonnegative whenever lambda is a valid bottom of the
/// spectrum on an end with growth rate a.
double buckley_koskela_gap(const ModelManifold& model, double p, double lambda,
                           double r_max);

/// Rayleigh-quotient upper bounds r^{-p} V(2r)/V(r) from the linear cutoff
/// that is 1 on B_r and falls to 0 across B_2r \ B_r.  Tends to 0 on
/// polynomial-growth ends, forcing lambda to vanish there.
std::vector<std::pair<double, double>> volume_decay_bound(
    const ModelManifold& model, double p, const std::vector<double>& r_list);

/// lambda_manifold plus both bounds, the gap, and a consistency flag.
SpectrumReport spectrum_report(const ModelManifold& model, double p,
                               const std::vector<double>& R_list, double r_max);

}  // namespace pendkit
