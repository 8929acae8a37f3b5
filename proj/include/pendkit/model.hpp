#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pendkit/quadrature.hpp"

namespace pendkit {

enum class ModelKind {
  Euclidean,
  Hyperbolic,
  ComplexHyperbolic,
  QuaternionicHyperbolic,
  PolynomialSynthetic,
  CustomTabulated,
};

enum class GrowthRegime { Exponential, Polynomial };

struct GrowthProfile {
  double a = 0.0;            ///< slope of log V(r) against r on the tail window
  double poly_degree = 0.0;  ///< slope of log V against log r on the same window
  GrowthRegime regime = GrowthRegime::Polynomial;
};

/// A rotationally symmetric model end: all geometry enters through the
/// radial area element A(r) of the distance spheres, normalized so the
/// unit-sphere measure is 1.  Values are immutable after construction and
/// all member operations are pure.
class ModelManifold {
 public:
  static ModelManifold euclidean(int n, double r_min = 0.0);
  static ModelManifold hyperbolic(int n, double r_min = 0.0);
  /// Area element sinh(2r) sinh^{4m-2}(r): the radial geometry whose
  /// distance Laplacian is 2 coth(2r) + 2(2m-1) coth(r).
  static ModelManifold complex_hyperbolic(int m, double r_min = 0.0);
  /// Area element sinh^3(2r) sinh^{4(m-1)}(r), distance Laplacian
  /// 6 coth(2r) + 4(m-1) coth(r).
  static ModelManifold quaternionic_hyperbolic(int m, double r_min = 0.0);
  /// Synthetic power-law end A(r) = r^k, k >= 0.
  static ModelManifold polynomial(double k, double r_min = 0.0);
  /// Tabulated A(r) samples, interpolated with a monotone (overshoot-free)
  /// cubic.  Nodes must be strictly increasing, samples strictly positive.
  static ModelManifold tabulated(std::vector<double> r, std::vector<double> a,
                                 std::string label = "tabulated");

  ModelKind kind() const { return kind_; }
  /// Intrinsic dimension: n, 2m, or 4m for the curved families; 1 + k
  /// plays that role for power-law ends.
  int dim() const { return dim_; }
  /// Family parameter: n for space forms, m for the Kaehler families,
  /// k for power laws.
  double family_param() const { return param_; }
  double r_min() const { return r_min_; }
  /// End of the radial domain: +inf except for tabulated data.
  double domain_end() const { return domain_end_; }
  const std::string& label() const { return label_; }

  /// A(r).  Throws DomainError below r_min and ExtrapolationError beyond
  /// tabulated samples.
  double area(double r) const;
  /// log A(r), stable for radii where A overflows a double.
  double log_area(double r) const;
  /// d/dr log A(r): the radial Laplacian of the distance function.
  /// Analytic for built-ins; centered difference of log A (step
  /// 1e-5 * max(1, r)) for tabulated data.
  double delta_r(double r) const;
  /// V(r) = integral of A over [r_min, r], adaptive quadrature at 1e-10.
  double volume(double r) const;
  /// Tail fit of V on [r_max/2, r_max]; requires r_max >= r_min + 10.
  GrowthProfile growth_profile(double r_max) const;
  /// Divergence-detected integral of A over the whole end.
  ImproperResult total_volume() const;

  /// Model with the same geometry and a different inner radius.
  ModelManifold with_r_min(double r_min) const;

 private:
  ModelManifold() = default;
  void check_radius(double r) const;

  ModelKind kind_ = ModelKind::Euclidean;
  int dim_ = 1;
  double param_ = 1.0;
  double r_min_ = 0.0;
  double domain_end_ = 0.0;
  std::string label_;
  // Tabulated kinds share their sample data; copies stay cheap.
  struct Table;
  std::shared_ptr<const Table> table_;
};

}  // namespace pendkit
