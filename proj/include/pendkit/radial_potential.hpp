#pragma once

#include <string>

#include "pendkit/grid.hpp"
#include "pendkit/model.hpp"

namespace pendkit {

/// I(r0, R) = integral of A(t)^{-1/(p-1)} over [r0, R].  Radial p-harmonic
/// potentials keep A |f'|^{p-2} f' constant, so every quantity in this
/// module reduces to this integral.  R may be +inf; divergence detection
/// returns +inf then.
double conductance_integral(const ModelManifold& model, double p, double r0, double R);

/// Same tail integral with the window-by-window evidence attached.
ImproperResult conductance_detail(const ModelManifold& model, double p, double r0);

/// Radial potential with f(r0) = 1, f(R) = 0: f(r) = I(r,R)/I(r0,R),
/// sampled on a uniform grid with analytic nodal derivatives.
RadialFunction annulus_potential(const ModelManifold& model, double p, double r0,
                                 double R, std::size_t size = 2001);

/// u = 1 - f: vanishes at r0, equals 1 at R, still radially p-harmonic.
RadialFunction reflected_potential(const ModelManifold& model, double p, double r0,
                                   double R, std::size_t size = 2001);

/// Condenser capacity I(r0,R)^{1-p}; 0 when the conductance integral
/// diverges.  Equals the p-energy of the annulus potential.
double p_capacity(const ModelManifold& model, double p, double r0, double R);

/// p-energy of the annulus potential by direct quadrature of A |f'|^p.
/// Dual route to p_capacity; R may be +inf.
double annulus_energy(const ModelManifold& model, double p, double r0, double R);

enum class EndVerdict { PParabolic, PHyperbolic };

struct EndClassification {
  EndVerdict verdict = EndVerdict::PParabolic;
  /// I(r0, inf); +inf when divergent.
  double tail_integral = 0.0;
  /// Limit of the exhaustion potentials at infinity: 0 on hyperbolic ends
  /// (full decay), 1 on parabolic ends.
  double liminf_estimate = 1.0;
  std::string evidence;
};

/// An end admits a nonconstant bounded radial p-harmonic potential exactly
/// when the conductance integral to infinity converges.
EndClassification classify_end(const ModelManifold& model, double p, double r0);

struct CaccioppoliCheck {
  double lhs = 0.0;  ///< integral of phi^p |u'|^p A
  double rhs = 0.0;  ///< p^p * integral of u^p |phi'|^p A
  bool holds = false;
};

/// Energy of a p-harmonic u on the cutoff's plateau against the lower-order
/// term p^p u^p |phi'|^p.  Requires u to vanish at one grid endpoint and
/// phi to vanish at the opposite one (checked; ContractError otherwise).
CaccioppoliCheck check_caccioppoli(const ModelManifold& model, double p,
                                   const RadialFunction& u, const RadialFunction& phi);

const char* to_string(EndVerdict v);

}  // namespace pendkit
