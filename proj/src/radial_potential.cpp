#include "pendkit/radial_potential.hpp"

#include <cmath>
#include <sstream>

#include "pendkit/errors.hpp"

namespace pendkit {

namespace {

void check_pr(const ModelManifold& model, double p, double r0) {
  if (!(p > 1.0)) throw ParameterError("requires p > 1");
  if (!(r0 >= model.r_min()))
    throw DomainError("r0 below the model's inner radius");
}

// A^{-1/(p-1)} through log A; stays finite where A overflows a double.
double resistivity(const ModelManifold& model, double p, double t) {
  return std::exp(-model.log_area(t) / (p - 1.0));
}

}  // namespace

double conductance_integral(const ModelManifold& model, double p, double r0, double R) {
  check_pr(model, p, r0);
  if (!(r0 < R)) throw ParameterError("conductance_integral: requires r0 < R");
  auto f = [&](double t) { return resistivity(model, p, t); };
  if (std::isinf(R)) {
    ImproperOptions opts;
    opts.domain_end = model.domain_end();
    ImproperResult res = improper_integral(f, r0, opts);
    return res.finite ? res.value : std::numeric_limits<double>::infinity();
  }
  if (R > model.domain_end())
    throw ExtrapolationError("conductance_integral: R beyond tabulated range");
  return adaptive_simpson(f, r0, R);
}

ImproperResult conductance_detail(const ModelManifold& model, double p, double r0) {
  check_pr(model, p, r0);
  ImproperOptions opts;
  opts.domain_end = model.domain_end();
  return improper_integral([&](double t) { return resistivity(model, p, t); }, r0, opts);
}

RadialFunction annulus_potential(const ModelManifold& model, double p, double r0,
                                 double R, std::size_t size) {
  check_pr(model, p, r0);
  if (!(r0 < R) || !std::isfinite(R))
    throw ParameterError("annulus_potential: requires r0 < R < inf");
  RadialFunction f;
  f.grid = build_grid(r0, R, size, 1.0);
  f.support_lo = r0;
  f.support_hi = R;
  const std::size_t n = f.grid.size();
  // Cumulative conductance from the outer boundary inward.
  std::vector<double> tail(n, 0.0);
  auto w = [&](double t) { return resistivity(model, p, t); };
  for (std::size_t i = n - 1; i-- > 0;) {
    tail[i] =
        tail[i + 1] + adaptive_simpson(w, f.grid.nodes[i], f.grid.nodes[i + 1]);
  }
  double total = tail[0];
  if (!(total > 0.0)) throw GeometryError("annulus_potential: zero conductance");
  f.values.resize(n);
  f.derivative.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    f.values[i] = tail[i] / total;
    f.derivative[i] = -w(f.grid.nodes[i]) / total;
  }
  f.values[0] = 1.0;
  f.values[n - 1] = 0.0;
  return f;
}

RadialFunction reflected_potential(const ModelManifold& model, double p, double r0,
                                   double R, std::size_t size) {
  RadialFunction f = annulus_potential(model, p, r0, R, size);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    f.values[i] = 1.0 - f.values[i];
    f.derivative[i] = -f.derivative[i];
  }
  return f;
}

double p_capacity(const ModelManifold& model, double p, double r0, double R) {
  double cond = conductance_integral(model, p, r0, R);
  if (std::isinf(cond)) return 0.0;
  return std::pow(cond, 1.0 - p);
}

double annulus_energy(const ModelManifold& model, double p, double r0, double R) {
  double cond = conductance_integral(model, p, r0, R);
  if (std::isinf(cond)) return 0.0;
  // |f'| = A^{-1/(p-1)} / I, so the energy density A |f'|^p collapses to
  // A^{-1/(p-1)} / I^p; integrate it independently of the capacity algebra.
  auto density = [&](double t) { return resistivity(model, p, t); };
  double raw;
  if (std::isinf(R)) {
    ImproperOptions opts;
    opts.domain_end = model.domain_end();
    ImproperResult res = improper_integral(density, r0, opts);
    if (!res.finite) return 0.0;
    raw = res.value;
  } else {
    raw = adaptive_simpson(density, r0, R);
  }
  return raw / std::pow(cond, p);
}

EndClassification classify_end(const ModelManifold& model, double p, double r0) {
  ImproperResult det = conductance_detail(model, p, r0);
  EndClassification c;
  std::ostringstream ev;
  if (det.finite) {
    c.verdict = EndVerdict::PHyperbolic;
    c.tail_integral = det.value;
    c.liminf_estimate = 0.0;
    ev << "conductance integral I(r0,inf) converged to " << det.value
       << "; exhaustion potentials decay to 0 at infinity\n";
  } else {
    c.verdict = EndVerdict::PParabolic;
    c.tail_integral = std::numeric_limits<double>::infinity();
    c.liminf_estimate = 1.0;
    ev << "conductance integral I(r0,inf) diverges; exhaustion potentials tend to 1\n";
  }
  ev << det.trace;
  c.evidence = ev.str();
  return c;
}

CaccioppoliCheck check_caccioppoli(const ModelManifold& model, double p,
                                   const RadialFunction& u, const RadialFunction& phi) {
  if (!(p > 1.0)) throw ParameterError("check_caccioppoli: requires p > 1");
  const std::size_t n = u.grid.size();
  if (phi.grid.size() != n)
    throw ContractError("check_caccioppoli: u and phi must share a grid");
  for (std::size_t i = 0; i < n; i += std::max<std::size_t>(1, n / 8))
    if (std::fabs(u.grid.nodes[i] - phi.grid.nodes[i]) > 1e-12)
      throw ContractError("check_caccioppoli: u and phi must share a grid");

  double umax = 0.0, pmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    umax = std::max(umax, std::fabs(u.values[i]));
    pmax = std::max(pmax, std::fabs(phi.values[i]));
    if (phi.values[i] < -1e-12 || phi.values[i] > 1.0 + 1e-12)
      throw ContractError("check_caccioppoli: phi must lie in [0,1]");
  }
  if (pmax > 0.0) {
    // u vanishes on one boundary component; phi on the complementary one.
    bool u_lo = std::fabs(u.values.front()) <= 1e-8 * std::max(umax, 1e-30);
    bool u_hi = std::fabs(u.values.back()) <= 1e-8 * std::max(umax, 1e-30);
    if (!u_lo && !u_hi)
      throw ContractError("check_caccioppoli: u must vanish at a boundary");
    double phi_off = u_lo ? phi.values.back() : phi.values.front();
    if (std::fabs(phi_off) > 1e-10)
      throw ContractError(
          "check_caccioppoli: phi must vanish on the boundary away from u's zero set");
  }

  CaccioppoliCheck chk;
  for (std::size_t i = 0; i < n; ++i) {
    double a = model.area(u.grid.nodes[i]);
    double w = u.grid.weights[i];
    chk.lhs += w * a * std::pow(phi.values[i], p) * std::pow(std::fabs(u.derivative[i]), p);
    chk.rhs += w * a * std::pow(std::fabs(u.values[i]), p) *
               std::pow(std::fabs(phi.derivative[i]), p);
  }
  chk.rhs *= std::pow(p, p);
  chk.holds = chk.lhs <= chk.rhs * (1.0 + 1e-8) + 1e-300;
  return chk;
}

const char* to_string(EndVerdict v) {
  return v == EndVerdict::PHyperbolic ? "PHyperbolic" : "PParabolic";
}

}  // namespace pendkit
