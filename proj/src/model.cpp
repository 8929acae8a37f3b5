#include "pendkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pendkit/errors.hpp"

namespace pendkit {

namespace {

// log(sinh r) without overflow for large r.
double log_sinh(double r) {
  if (r <= 0.0) return -std::numeric_limits<double>::infinity();
  if (r < 20.0) return std::log(std::sinh(r));
  return r - std::log(2.0) + std::log1p(-std::exp(-2.0 * r));
}

double coth(double r) { return 1.0 / std::tanh(r); }

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double sse = 0.0;
};

LinearFit ols(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    double e = y[i] - (fit.intercept + fit.slope * x[i]);
    fit.sse += e * e;
  }
  return fit;
}

}  // namespace

// Monotone cubic (Fritsch-Carlson) interpolant of the tabulated samples.
struct ModelManifold::Table {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> d;  // node derivatives

  void build_slopes() {
    const std::size_t n = x.size();
    d.assign(n, 0.0);
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x[i + 1] - x[i];
      delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d[i] = 0.0;
      } else {
        double w1 = 2.0 * h[i] + h[i - 1];
        double w2 = h[i] + 2.0 * h[i - 1];
        d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
      double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
      if (d * d0 <= 0.0) return 0.0;
      if (d0 * d1 < 0.0 && std::fabs(d) > 3.0 * std::fabs(d0)) return 3.0 * d0;
      return d;
    };
    d[0] = (n == 2) ? delta[0] : end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] =
        (n == 2) ? delta[0] : end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double eval(double r) const {
    auto it = std::upper_bound(x.begin(), x.end(), r);
    std::size_t i = (it == x.begin()) ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    i = std::min(i, x.size() - 2);
    double h = x[i + 1] - x[i];
    double t = (r - x[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2 * t3 - 3 * t2 + 1;
    double h10 = t3 - 2 * t2 + t;
    double h01 = -2 * t3 + 3 * t2;
    double h11 = t3 - t2;
    return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
  }
};

ModelManifold ModelManifold::euclidean(int n, double r_min) {
  if (n < 1) throw ParameterError("euclidean: dimension must be >= 1");
  if (r_min < 0.0) throw ParameterError("euclidean: r_min must be >= 0");
  ModelManifold m;
  m.kind_ = ModelKind::Euclidean;
  m.dim_ = n;
  m.param_ = n;
  m.r_min_ = r_min;
  m.domain_end_ = std::numeric_limits<double>::infinity();
  m.label_ = "euclidean(n=" + std::to_string(n) + ")";
  return m;
}

ModelManifold ModelManifold::hyperbolic(int n, double r_min) {
  if (n < 2) throw ParameterError("hyperbolic: dimension must be >= 2");
  if (r_min < 0.0) throw ParameterError("hyperbolic: r_min must be >= 0");
  ModelManifold m;
  m.kind_ = ModelKind::Hyperbolic;
  m.dim_ = n;
  m.param_ = n;
  m.r_min_ = r_min;
  m.domain_end_ = std::numeric_limits<double>::infinity();
  m.label_ = "hyperbolic(n=" + std::to_string(n) + ")";
  return m;
}

ModelManifold ModelManifold::complex_hyperbolic(int mm, double r_min) {
  if (mm < 1) throw ParameterError("complex_hyperbolic: m must be >= 1");
  if (r_min < 0.0) throw ParameterError("complex_hyperbolic: r_min must be >= 0");
  ModelManifold m;
  m.kind_ = ModelKind::ComplexHyperbolic;
  m.dim_ = 2 * mm;
  m.param_ = mm;
  m.r_min_ = r_min;
  m.domain_end_ = std::numeric_limits<double>::infinity();
  m.label_ = "ch(m=" + std::to_string(mm) + ")";
  return m;
}

ModelManifold ModelManifold::quaternionic_hyperbolic(int mm, double r_min) {
  if (mm < 1) throw ParameterError("quaternionic_hyperbolic: m must be >= 1");
  if (r_min < 0.0) throw ParameterError("quaternionic_hyperbolic: r_min must be >= 0");
  ModelManifold m;
  m.kind_ = ModelKind::QuaternionicHyperbolic;
  m.dim_ = 4 * mm;
  m.param_ = mm;
  m.r_min_ = r_min;
  m.domain_end_ = std::numeric_limits<double>::infinity();
  m.label_ = "qh(m=" + std::to_string(mm) + ")";
  return m;
}

ModelManifold ModelManifold::polynomial(double k, double r_min) {
  if (k < 0.0) throw ParameterError("polynomial: exponent must be >= 0");
  if (r_min < 0.0) throw ParameterError("polynomial: r_min must be >= 0");
  ModelManifold m;
  m.kind_ = ModelKind::PolynomialSynthetic;
  m.dim_ = static_cast<int>(std::floor(k)) + 1;
  m.param_ = k;
  m.r_min_ = r_min;
  m.domain_end_ = std::numeric_limits<double>::infinity();
  m.label_ = "poly(k=" + std::to_string(k) + ")";
  return m;
}

ModelManifold ModelManifold::tabulated(std::vector<double> r, std::vector<double> a,
                                       std::string label) {
  if (r.size() != a.size()) throw ParameterError("tabulated: r and A sizes differ");
  if (r.size() < 4) throw ParameterError("tabulated: need at least 4 samples");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(a[i] > 0.0)) throw ParameterError("tabulated: samples must be positive");
    if (i > 0 && !(r[i] > r[i - 1]))
      throw ParameterError("tabulated: nodes must be strictly increasing");
  }
  auto tab = std::make_shared<Table>();
  tab->x = std::move(r);
  tab->y = std::move(a);
  tab->build_slopes();
  ModelManifold m;
  m.kind_ = ModelKind::CustomTabulated;
  m.dim_ = 1;
  m.param_ = 0.0;
  m.r_min_ = tab->x.front();
  m.domain_end_ = tab->x.back();
  m.label_ = std::move(label);
  m.table_ = std::move(tab);
  return m;
}

ModelManifold ModelManifold::with_r_min(double r_min) const {
  if (r_min < 0.0) throw ParameterError("with_r_min: r_min must be >= 0");
  if (kind_ == ModelKind::CustomTabulated && r_min < table_->x.front())
    throw ParameterError("with_r_min: below the tabulated range");
  ModelManifold m = *this;
  m.r_min_ = r_min;
  return m;
}

void ModelManifold::check_radius(double r) const {
  if (!(r >= r_min_))
    throw DomainError(label_ + ": r=" + std::to_string(r) + " below r_min=" +
                      std::to_string(r_min_));
  if (r > domain_end_)
    throw ExtrapolationError(label_ + ": r=" + std::to_string(r) +
                             " beyond tabulated range");
}

double ModelManifold::area(double r) const {
  check_radius(r);
  switch (kind_) {
    case ModelKind::Euclidean:
      return std::pow(r, dim_ - 1);
    case ModelKind::PolynomialSynthetic:
      return std::pow(r, param_);
    case ModelKind::CustomTabulated:
      return table_->eval(r);
    default:
      return std::exp(log_area(r));
  }
}

double ModelManifold::log_area(double r) const {
  check_radius(r);
  switch (kind_) {
    case ModelKind::Euclidean:
      return (dim_ - 1) * std::log(r);
    case ModelKind::Hyperbolic:
      return (dim_ - 1) * log_sinh(r);
    case ModelKind::ComplexHyperbolic:
      return log_sinh(2.0 * r) + (4.0 * param_ - 2.0) * log_sinh(r);
    case ModelKind::QuaternionicHyperbolic:
      return 3.0 * log_sinh(2.0 * r) + 4.0 * (param_ - 1.0) * log_sinh(r);
    case ModelKind::PolynomialSynthetic:
      return param_ * std::log(r);
    case ModelKind::CustomTabulated: {
      double a = table_->eval(r);
      if (!(a > 0.0))
        throw NumericError(label_ + ": interpolated area not positive at r=" +
                           std::to_string(r));
      return std::log(a);
    }
  }
  return 0.0;
}

double ModelManifold::delta_r(double r) const {
  check_radius(r);
  switch (kind_) {
    case ModelKind::Euclidean:
      return (dim_ - 1) / r;
    case ModelKind::Hyperbolic:
      return (dim_ - 1) * coth(r);
    case ModelKind::ComplexHyperbolic:
      return 2.0 * coth(2.0 * r) + (4.0 * param_ - 2.0) * coth(r);
    case ModelKind::QuaternionicHyperbolic:
      return 6.0 * coth(2.0 * r) + 4.0 * (param_ - 1.0) * coth(r);
    case ModelKind::PolynomialSynthetic:
      return param_ / r;
    case ModelKind::CustomTabulated: {
      double h = 1e-5 * std::max(1.0, r);
      if (!(r > r_min_))
        throw DiscretizationError(label_ + ": delta_r needs a two-sided neighborhood");
      if (r - h < table_->x.front() || r + h > table_->x.back())
        throw DiscretizationError(label_ +
                                  ": insufficient neighboring samples for delta_r");
      return (log_area(r + h) - log_area(r - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

double ModelManifold::volume(double r) const {
  check_radius(r);
  if (r == r_min_) return 0.0;
  return adaptive_simpson([this](double t) { return area(t); }, r_min_, r);
}

GrowthProfile ModelManifold::growth_profile(double r_max) const {
  if (!(r_max >= r_min_ + 10.0))
    throw ParameterError(label_ + ": growth_profile needs r_max >= r_min + 10");
  check_radius(r_max);
  double lo = std::max(0.5 * r_max, r_min_ + 1e-6 * (r_max - r_min_));
  const int samples = 33;
  std::vector<double> rs(samples), logv(samples), logr(samples);
  double v = volume(lo);
  double prev = lo;
  for (int i = 0; i < samples; ++i) {
    double r = lo + (r_max - lo) * i / double(samples - 1);
    if (r > prev) {
      v += adaptive_simpson([this](double t) { return area(t); }, prev, r);
      prev = r;
    }
    if (!(v > 0.0) || !std::isfinite(v))
      throw NumericError(label_ + ": volume not positive/finite on the tail window");
    rs[i] = r;
    logv[i] = std::log(v);
    logr[i] = std::log(r);
  }
  LinearFit exp_fit = ols(rs, logv);
  LinearFit poly_fit = ols(logr, logv);
  GrowthProfile g;
  g.a = exp_fit.slope;
  g.poly_degree = poly_fit.slope;
  // The regime is decided by which straight-line model actually fits the
  // tail; the slope threshold alone misreads power laws at finite r_max,
  // where log V still drifts in r.
  constexpr double eps_regime = 1e-3;
  g.regime = (exp_fit.sse < poly_fit.sse && g.a > eps_regime)
                 ? GrowthRegime::Exponential
                 : GrowthRegime::Polynomial;
  return g;
}

ImproperResult ModelManifold::total_volume() const {
  double head_end;
  if (std::isfinite(domain_end_)) {
    head_end = r_min_ + std::min(1.0, 0.25 * (domain_end_ - r_min_));
  } else {
    head_end = r_min_ + 1.0;
  }
  double head = adaptive_simpson([this](double t) { return area(t); }, r_min_, head_end);
  ImproperOptions opts;
  opts.domain_end = domain_end_;
  ImproperResult tail =
      improper_integral([this](double t) { return area(t); }, head_end, opts);
  if (tail.finite) tail.value += head;
  return tail;
}

}  // namespace pendkit
