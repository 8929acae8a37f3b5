#include "pendkit/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "pendkit/errors.hpp"

namespace pendkit {

SpectralResult lambda_ball(const ModelManifold& model, double p, double R) {
  if (!(R > std::max(model.r_min(), 0.0)))
    throw ParameterError("lambda_ball: requires R > max(r_min, 0)");
  Grid grid = build_grid(model.r_min(), R, 2049, 1.0);
  return p_rayleigh_minimize(model, p, grid);
}

namespace {

// Power-law extrapolation of lambda(R) = lambda_inf + c R^{-q} through the
// last three samples; bisection on q.
bool extrapolate_power(const std::vector<double>& R, const std::vector<double>& lam,
                       double& limit, double& err) {
  std::size_t n = R.size();
  double l1 = lam[n - 3], l2 = lam[n - 2], l3 = lam[n - 1];
  double d12 = l1 - l2, d23 = l2 - l3;
  if (!(d12 > 0.0) || !(d23 > 0.0) || !(d12 > d23)) return false;
  double R1 = R[n - 3], R2 = R[n - 2], R3 = R[n - 1];
  auto mismatch = [&](double q) {
    double w1 = std::pow(R1, -q), w2 = std::pow(R2, -q), w3 = std::pow(R3, -q);
    return d12 / d23 - (w1 - w2) / (w2 - w3);
  };
  double qlo = 0.05, qhi = 8.0;
  double flo = mismatch(qlo), fhi = mismatch(qhi);
  if (flo * fhi > 0.0) return false;
  for (int it = 0; it < 200; ++it) {
    double qm = 0.5 * (qlo + qhi);
    double fm = mismatch(qm);
    if (flo * fm <= 0.0) {
      qhi = qm;
    } else {
      qlo = qm;
      flo = fm;
    }
  }
  double q = 0.5 * (qlo + qhi);
  double w2 = std::pow(R2, -q), w3 = std::pow(R3, -q);
  double cc = d23 / (w2 - w3);
  limit = l3 - cc * w3;
  err = std::fabs(cc * w3);
  return std::isfinite(limit);
}

}  // namespace

SpectrumReport lambda_manifold(const ModelManifold& model, double p,
                               const std::vector<double>& R_list) {
  if (R_list.size() < 3)
    throw ParameterError("lambda_manifold: need at least 3 radii");
  for (std::size_t i = 1; i < R_list.size(); ++i)
    if (!(R_list[i] > R_list[i - 1]))
      throw ParameterError("lambda_manifold: R_list must be increasing");

  SpectrumReport rep;
  std::vector<double> lams;
  for (double R : R_list) {
    SpectralResult res = p_rayleigh_minimize(
        model, p, build_grid(model.r_min(), R, 2049, 1.0));
    rep.lambda_balls.emplace_back(R, res.lambda);
    lams.push_back(res.lambda);
  }
  for (std::size_t i = 1; i < lams.size(); ++i) {
    if (lams[i] > lams[i - 1] * (1.0 + 1e-6) + 1e-14)
      throw NumericError(
          "lambda_manifold: ball eigenvalues not nonincreasing in R (domain "
          "monotonicity violated numerically)");
  }
  double limit, err;
  if (extrapolate_power(std::vector<double>(R_list.begin(), R_list.end()), lams, limit,
                        err)) {
    rep.lambda_limit = std::max(0.0, limit);
    rep.error_bar = err;
  } else {
    rep.lambda_limit = lams.back();
    rep.error_bar = std::fabs(lams[lams.size() - 2] - lams.back());
  }
  return rep;
}

double divergence_lower_bound(const ModelManifold& model, double p, double r0,
                              double R) {
  if (!(p > 1.0)) throw ParameterError("divergence_lower_bound: requires p > 1");
  if (!(r0 < R)) throw ParameterError("divergence_lower_bound: requires r0 < R");
  double inf_delta;
  if (model.kind() == ModelKind::CustomTabulated) {
    const int samples = 4096;
    double lo = std::max(r0, std::nextafter(model.r_min(), R));
    inf_delta = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
      double r = lo + (R - lo) * i / double(samples);
      inf_delta = std::min(inf_delta, model.delta_r(r));
    }
  } else {
    // Every built-in family has d/dr log A decreasing, so the infimum over
    // [r0, R] sits at R.
    inf_delta = model.delta_r(R);
  }
  if (!(inf_delta > 0.0))
    throw BoundInapplicableError(
        "divergence_lower_bound: Delta r not positive on the domain; the "
        "divergence bound needs inf div X > 0");
  return std::pow(inf_delta / p, p);
}

double cheng_upper_bound(const ModelManifold& model, double p, double r_max) {
  if (!(p > 1.0)) throw ParameterError("cheng_upper_bound: requires p > 1");
  GrowthProfile g = model.growth_profile(r_max);
  if (g.regime == GrowthRegime::Polynomial) return 0.0;
  return std::pow(g.a / p, p);
}

double buckley_koskela_gap(const ModelManifold& model, double p, double lambda,
                           double r_max) {
  if (!(lambda >= 0.0)) throw ParameterError("buckley_koskela_gap: lambda >= 0");
  GrowthProfile g = model.growth_profile(r_max);
  return g.a - p * std::pow(lambda, 1.0 / p);
}

std::vector<std::pair<double, double>> volume_decay_bound(
    const ModelManifold& model, double p, const std::vector<double>& r_list) {
  if (!(p > 1.0)) throw ParameterError("volume_decay_bound: requires p > 1");
  std::vector<std::pair<double, double>> out;
  out.reserve(r_list.size());
  for (double r : r_list) {
    double vr = model.volume(r);
    double v2r = model.volume(2.0 * r);
    out.emplace_back(r, std::pow(r, -p) * v2r / vr);
  }
  return out;
}

SpectrumReport spectrum_report(const ModelManifold& model, double p,
                               const std::vector<double>& R_list, double r_max) {
  SpectrumReport rep = lambda_manifold(model, p, R_list);
  try {
    rep.lower_bound =
        divergence_lower_bound(model, p, std::max(model.r_min(), 1e-3), r_max);
  } catch (const BoundInapplicableError&) {
    rep.lower_bound = 0.0;
  }
  rep.upper_bound = cheng_upper_bound(model, p, r_max);
  rep.bk_gap = buckley_koskela_gap(model, p, rep.lambda_limit, r_max);
  const double slack = 1e-3;
  bool lower_ok = rep.lower_bound <= rep.lambda_limit * 1.05 + slack;
  bool upper_ok =
      rep.upper_bound == 0.0 ? rep.lambda_limit <= slack
                             : rep.lambda_limit <= rep.upper_bound * 1.05 + slack;
  rep.consistent = lower_ok && upper_ok && rep.bk_gap >= -0.05;
  return rep;
}

}  // namespace pendkit
