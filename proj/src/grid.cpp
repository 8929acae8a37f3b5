#include "pendkit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pendkit/errors.hpp"

namespace pendkit {

Grid build_grid(double r0, double R, std::size_t size, double stretch) {
  if (!(r0 < R)) throw ParameterError("build_grid: requires r0 < R");
  if (size < 3) throw ParameterError("build_grid: requires size >= 3");
  if (!(stretch >= 1.0)) throw ParameterError("build_grid: requires stretch >= 1");
  Grid g;
  g.nodes.resize(size);
  const std::size_t cells = size - 1;
  if (stretch - 1.0 < 1e-12) {
    for (std::size_t i = 0; i < size; ++i)
      g.nodes[i] = r0 + (R - r0) * double(i) / double(cells);
  } else {
    // First cell width from the geometric-sum identity, then widths grow
    // by `stretch` per cell.
    double h0 = (R - r0) * (stretch - 1.0) / (std::pow(stretch, double(cells)) - 1.0);
    double r = r0, h = h0;
    for (std::size_t i = 0; i < size; ++i) {
      g.nodes[i] = r;
      r += h;
      h *= stretch;
    }
  }
  g.nodes.front() = r0;
  g.nodes.back() = R;
  g.weights.assign(size, 0.0);
  for (std::size_t i = 0; i + 1 < size; ++i) {
    double h = g.nodes[i + 1] - g.nodes[i];
    g.weights[i] += 0.5 * h;
    g.weights[i + 1] += 0.5 * h;
  }
  return g;
}

double RadialFunction::operator()(double r) const {
  const auto& x = grid.nodes;
  if (r <= x.front()) return values.front();
  if (r >= x.back()) return values.back();
  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
  double t = (r - x[i]) / (x[i + 1] - x[i]);
  return (1.0 - t) * values[i] + t * values[i + 1];
}

double RadialFunction::deriv(double r) const {
  const auto& x = grid.nodes;
  if (r <= x.front()) return derivative.front();
  if (r >= x.back()) return derivative.back();
  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
  double t = (r - x[i]) / (x[i + 1] - x[i]);
  return (1.0 - t) * derivative[i] + t * derivative[i + 1];
}

void RadialFunction::write_csv(std::ostream& os) const {
  os << "r,value\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    os << grid.nodes[i] << ',' << values[i] << '\n';
}

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double smoothstep_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  double u = t * (1.0 - t);
  return 30.0 * u * u;
}

RadialFunction plateau_cutoff(const Grid& grid, double a, double b, double c, double d) {
  if (!(a <= b && b <= c && c <= d))
    throw ParameterError("plateau_cutoff: requires a <= b <= c <= d");
  RadialFunction f;
  f.grid = grid;
  f.values.resize(grid.size());
  f.derivative.resize(grid.size());
  f.support_lo = a;
  f.support_hi = d;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double r = grid.nodes[i];
    if (r < b && a < b) {
      double t = (r - a) / (b - a);
      f.values[i] = smoothstep(t);
      f.derivative[i] = smoothstep_deriv(t) / (b - a);
    } else if (r > c && c < d) {
      double t = (d - r) / (d - c);
      f.values[i] = smoothstep(t);
      f.derivative[i] = -smoothstep_deriv(t) / (d - c);
    } else {
      f.values[i] = (r >= a && r <= d) ? 1.0 : 0.0;
      f.derivative[i] = 0.0;
    }
  }
  return f;
}

RadialFunction left_plateau_cutoff(const Grid& grid, double c, double d) {
  return plateau_cutoff(grid, grid.r_lo(), grid.r_lo(), c, d);
}

RadialFunction right_plateau_cutoff(const Grid& grid, double a, double b) {
  return plateau_cutoff(grid, a, b, grid.r_hi(), grid.r_hi());
}

}  // namespace pendkit
