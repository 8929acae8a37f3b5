#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace pendkit {

/// Strictly increasing node sequence with trapezoid quadrature weights.
struct Grid {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  double r_lo() const { return nodes.front(); }
  double r_hi() const { return nodes.back(); }
};

/// Nodes on [r0, R]: uniform for stretch = 1, otherwise cell widths grow
/// geometrically by `stretch`, clustering nodes near r0.
Grid build_grid(double r0, double R, std::size_t size, double stretch = 1.0);

/// A radial scalar field sampled on a grid, with nodal derivatives.
struct RadialFunction {
  Grid grid;
  std::vector<double> values;
  std::vector<double> derivative;
  double support_lo = 0.0;
  double support_hi = 0.0;

  double operator()(double r) const;  ///< linear interpolation between nodes
  double deriv(double r) const;
  /// Two-column CSV "r,value" with a header line.
  void write_csv(std::ostream& os) const;
};

/// Quintic smoothstep ramp: 0 for t <= 0, 1 for t >= 1, C^2 in between.
double smoothstep(double t);
double smoothstep_deriv(double t);

/// Cutoff rising on [a,b], 1 on [b,c], falling to 0 on [c,d].
RadialFunction plateau_cutoff(const Grid& grid, double a, double b, double c, double d);

/// Cutoff equal to 1 on [r_lo, c] and falling to 0 on [c, d].
RadialFunction left_plateau_cutoff(const Grid& grid, double c, double d);

/// Cutoff equal to 0 on [r_lo, a], rising on [a, b], 1 on [b, r_hi].
RadialFunction right_plateau_cutoff(const Grid& grid, double a, double b);

}  // namespace pendkit
