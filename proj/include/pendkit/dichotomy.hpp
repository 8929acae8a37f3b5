#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pendkit/model.hpp"
#include "pendkit/radial_potential.hpp"

namespace pendkit {

struct SobolevData {
  double p = 2.0;
  double q = 2.0;
  /// Largest probed quotient (integral |u|^q)^{p/q} / integral |u'|^p.
  /// A lower estimate of the best constant by construction.
  double C = 0.0;
  /// Set when a dilation ladder blows up monotonically; the inequality
  /// then admits no finite constant.
  bool infinite = false;
  std::vector<std::pair<std::string, double>> probe_trace;
};

/// Probes the best Sobolev constant of the end with compactly supported
/// radial test functions: smoothstep plateaus and power-law bumps, each
/// pushed through a dilation ladder.  Deterministic for a fixed seed;
/// enlarging family_size only appends probes.
SobolevData sobolev_probe(const ModelManifold& model, double p, double q,
                          int family_size, std::uint64_t seed);

struct ConstantChain {
  double C1 = 0.0;  ///< C * 2^{p-1}: splitting the gradient of a product
  double C2 = 0.0;  ///< C1 * (1 + p^p): absorbing the energy term
  double C3 = 0.0;  ///< C2 * grad_bound^p: cutoff gradient estimate
};

/// The explicit constants threading the cutoff argument from a Sobolev
/// constant C to the volume inequality (V(r1)-V(r0))^{p/q} <= C3 V(r0).
ConstantChain cutoff_constant_chain(double C, double p, double grad_bound);

enum class DichotomyVerdict { FiniteVolume, PHyperbolic, HypothesisFailed };

struct DichotomyReport {
  DichotomyVerdict verdict = DichotomyVerdict::HypothesisFailed;
  ConstantChain constants;
  double volume_lhs = 0.0;  ///< (V(r1) - V(r0))^{p/q}
  double volume_rhs = 0.0;  ///< C3 * V(r0)
  bool volume_inequality_holds = false;
  /// Finite probed constants cannot certify a finite supremum; verdicts
  /// that rely on them carry this marker.
  bool probe_conditional = false;
  std::vector<std::pair<double, double>> h_trace;  ///< (r, h(r))
  double h_bound = 0.0;      ///< 2 S C * boundary term, dominates h^{(m-p)/m}
  double smallness_r0 = 0.0; ///< inner radius meeting the 1/(2SC) tail condition
  std::string trace;
};

/// Ends carrying a finite (probed) Sobolev constant either have finite
/// volume or are p-hyperbolic.  Parabolic + finite constant + infinite
/// volume throws TheoremViolationError: that combination is ruled out, so
/// firing means a bug or a probe overestimate.
DichotomyReport sobolev_dichotomy(const ModelManifold& model, const SobolevData& sob,
                                  double r0, double r1);

/// A rotationally symmetric hypersurface end, described by the induced
/// area element (a model) and the mean curvature magnitude per radius.
/// S is the Sobolev constant of the ambient Hoffmann-Spruck inequality;
/// no computable value exists, so it is a required input (1 for synthetic
/// runs).
struct ImmersedEndProfile {
  int m = 3;  ///< submanifold dimension, >= 3
  ModelManifold model;
  std::function<double(double)> mean_curvature;
  double sobolev_S = 1.0;
};

/// L^q norm of |H| over the end beyond r0, with divergence detection;
/// +inf when the integral diverges.
double mean_curvature_norm(const ImmersedEndProfile& profile, double q, double r0);

/// Tracks h(r) = integral of f_r^{pm/(m-p)} over the annulus beyond the
/// (possibly enlarged) inner cut, checks the Hoffmann-Spruck/Caccioppoli
/// inequality at each radius with the supplied S, and reports the
/// dichotomy verdict.  Requires 1 < p < m.
DichotomyReport immersed_end_dichotomy(const ImmersedEndProfile& profile, double p,
                                       double r0, std::vector<double> r_list);

const char* to_string(DichotomyVerdict v);

}  // namespace pendkit
