#include "pendkit/discrete_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pendkit/errors.hpp"

namespace pendkit {

namespace {

// |s|^{p-1} sign(s); exact at s = 0 for every p > 1.
double flux_phi(double s, double p) {
  if (s == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(s), p - 1.0), s);
}

// d/ds of the regularized flux (s^2 + eps^2)^{(p-2)/2} s.
double flux_phi_prime_reg(double s, double p, double eps) {
  double q = s * s + eps * eps;
  return std::pow(q, 0.5 * p - 2.0) * ((p - 1.0) * s * s + eps * eps);
}

double flux_phi_reg(double s, double p, double eps) {
  double q = s * s + eps * eps;
  return std::pow(q, 0.5 * p - 1.0) * s;
}

// Cell data shared by both solvers, with the area element rescaled by
// exp(-shift) so extreme growth rates stay inside double range.  Both the
// Dirichlet solution and the quotient are invariant under this scaling.
struct CellData {
  std::vector<double> h;      // cell widths
  std::vector<double> a_mid;  // scaled area at cell midpoints
  std::vector<double> mass;   // scaled area * trapezoid weight at nodes
  double shift = 0.0;
};

CellData make_cells(const ModelManifold& model, const Grid& grid) {
  CellData c;
  const std::size_t n = grid.size();
  c.h.resize(n - 1);
  std::vector<double> log_mid(n - 1), log_node(n);
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    c.h[j] = grid.nodes[j + 1] - grid.nodes[j];
    log_mid[j] = model.log_area(0.5 * (grid.nodes[j] + grid.nodes[j + 1]));
    shift = std::max(shift, log_mid[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    log_node[i] = model.log_area(grid.nodes[i]);
    shift = std::max(shift, log_node[i]);
  }
  c.shift = shift;
  c.a_mid.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) c.a_mid[j] = std::exp(log_mid[j] - shift);
  c.mass.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    c.mass[i] = grid.weights[i] * std::exp(log_node[i] - shift);
  return c;
}

// Tridiagonal solve (Thomas); diag/lower/upper are overwritten.
void thomas_solve(std::vector<double>& lower, std::vector<double>& diag,
                  std::vector<double>& upper, std::vector<double>& rhs,
                  std::vector<double>& out) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  out.resize(n);
  out[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out[i] = (rhs[i] - upper[i] * out[i + 1]) / diag[i];
}

std::vector<double> nodal_derivative(const Grid& grid, const std::vector<double>& u) {
  const std::size_t n = grid.size();
  std::vector<double> d(n);
  d[0] = (u[1] - u[0]) / (grid.nodes[1] - grid.nodes[0]);
  d[n - 1] = (u[n - 1] - u[n - 2]) / (grid.nodes[n - 1] - grid.nodes[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = (u[i + 1] - u[i - 1]) / (grid.nodes[i + 1] - grid.nodes[i - 1]);
  return d;
}

}  // namespace

RadialFunction solve_p_dirichlet(const ModelManifold& model, double p, const Grid& grid,
                                 double bc_lo, double bc_hi) {
  if (!(p > 1.0)) throw ParameterError("solve_p_dirichlet: requires p > 1");
  if (!std::isfinite(bc_lo) || !std::isfinite(bc_hi))
    throw ParameterError("solve_p_dirichlet: boundary values must be finite");
  const std::size_t n = grid.size();
  CellData c = make_cells(model, grid);
  const double eps = 1e-12;

  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = (grid.nodes[i] - grid.r_lo()) / (grid.r_hi() - grid.r_lo());
    u[i] = bc_lo + t * (bc_hi - bc_lo);
  }

  auto fluxes = [&](const std::vector<double>& v, std::vector<double>& q, double e) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      double d = (v[j + 1] - v[j]) / c.h[j];
      q[j] = c.a_mid[j] * (e > 0.0 ? flux_phi_reg(d, p, e) : flux_phi(d, p));
    }
  };
  auto defect = [&](const std::vector<double>& q) {
    double qmin = q[0], qmax = q[0];
    for (double v : q) {
      qmin = std::min(qmin, v);
      qmax = std::max(qmax, v);
    }
    double scale = std::max(std::fabs(qmin), std::fabs(qmax));
    return (scale > 0.0) ? (qmax - qmin) / scale : 0.0;
  };

  std::vector<double> q(n - 1), F(n), lower, diag, upper, rhs, step;
  const long cap = 10000;
  long iter = 0;
  double res = std::numeric_limits<double>::infinity();
  for (; iter < cap; ++iter) {
    fluxes(u, q, eps);
    double fnorm = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      F[i] = q[i] - q[i - 1];
      fnorm += F[i] * F[i];
    }
    fnorm = std::sqrt(fnorm);
    // Convergence is judged on the unregularized flux constancy.
    std::vector<double> q0(n - 1);
    fluxes(u, q0, 0.0);
    res = defect(q0);
    if (res <= 1e-10) break;

    const std::size_t m = n - 2;
    lower.assign(m, 0.0);
    diag.assign(m, 0.0);
    upper.assign(m, 0.0);
    rhs.assign(m, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double dl = (u[i] - u[i - 1]) / c.h[i - 1];
      double dr = (u[i + 1] - u[i]) / c.h[i];
      double cl = c.a_mid[i - 1] * flux_phi_prime_reg(dl, p, eps) / c.h[i - 1];
      double cr = c.a_mid[i] * flux_phi_prime_reg(dr, p, eps) / c.h[i];
      std::size_t k = i - 1;
      diag[k] = -(cl + cr);
      if (k > 0) lower[k] = cl;
      if (k + 1 < m) upper[k] = cr;
      rhs[k] = -F[i];
    }
    thomas_solve(lower, diag, upper, rhs, step);

    double s = 1.0;
    bool accepted = false;
    std::vector<double> u_try(n);
    for (int bt = 0; bt < 50; ++bt) {
      u_try = u;
      for (std::size_t k = 0; k < m; ++k) u_try[k + 1] += s * step[k];
      fluxes(u_try, q, eps);
      double fn = 0.0;
      for (std::size_t i = 1; i + 1 < n; ++i) {
        double f = q[i] - q[i - 1];
        fn += f * f;
      }
      fn = std::sqrt(fn);
      if (fn <= (1.0 - 0.25 * s) * fnorm || fn < 1e-300) {
        u = u_try;
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) u = u_try;  // smallest step; next Jacobian is fresher
  }
  if (res > 1e-10)
    throw ConvergenceError("solve_p_dirichlet: flux defect " + std::to_string(res) +
                               " above tolerance after iteration cap",
                           res, iter);

  RadialFunction out;
  out.grid = grid;
  out.values = u;
  out.derivative = nodal_derivative(grid, u);
  out.support_lo = grid.r_lo();
  out.support_hi = grid.r_hi();
  return out;
}

double rayleigh_quotient(const ModelManifold& model, double p, const Grid& grid,
                         const std::vector<double>& u) {
  if (u.size() != grid.size())
    throw ParameterError("rayleigh_quotient: size mismatch with grid");
  CellData c = make_cells(model, grid);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    double d = (u[j + 1] - u[j]) / c.h[j];
    num += c.a_mid[j] * std::pow(std::fabs(d), p) * c.h[j];
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    den += c.mass[i] * std::pow(std::fabs(u[i]), p);
  if (!(den > 0.0)) throw ParameterError("rayleigh_quotient: u vanishes");
  return num / den;
}

SpectralResult p_rayleigh_minimize(const ModelManifold& model, double p,
                                   const Grid& grid, const RayleighOptions& opts) {
  if (!(p > 1.0)) throw ParameterError("p_rayleigh_minimize: requires p > 1");
  if (grid.size() < 33) throw ParameterError("p_rayleigh_minimize: grid size >= 33");
  const std::size_t n = grid.size();
  CellData c = make_cells(model, grid);

  const std::size_t lo_free = opts.dirichlet_left ? 1 : 0;  // u[n-1] always pinned

  std::vector<double> u(n);
  if (p == 2.0) {
    const double pi = 3.14159265358979323846;
    for (std::size_t i = 0; i < n; ++i) {
      double t = (grid.nodes[i] - grid.r_lo()) / (grid.r_hi() - grid.r_lo());
      u[i] = opts.dirichlet_left ? std::sin(pi * t) : std::cos(0.5 * pi * t);
    }
  } else {
    // Positive initial data from the linear (p = 2) ground state keeps the
    // iteration in the cone of the first eigenfunction.
    RayleighOptions warm = opts;
    warm.max_iterations = 20000;
    u = p_rayleigh_minimize(model, 2.0, grid, warm).eigenfunction.values;
  }
  u[n - 1] = 0.0;
  if (opts.dirichlet_left) u[0] = 0.0;

  auto normalize = [&](std::vector<double>& v) {
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) den += c.mass[i] * std::pow(std::fabs(v[i]), p);
    double s = std::pow(den, -1.0 / p);
    for (double& x : v) x = std::fabs(x) * s;
  };
  auto quotient = [&](const std::vector<double>& v) {
    double num = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      double d = (v[j + 1] - v[j]) / c.h[j];
      num += c.a_mid[j] * std::pow(std::fabs(d), p) * c.h[j];
    }
    return num;  // denominator is 1 after normalize()
  };

  normalize(u);
  double lam = quotient(u);

  std::vector<double> qflux(n - 1), g(n), d(n), u_try(n);
  std::vector<double> lower, diag, upper, rhs, sol;
  std::vector<double> history;
  history.reserve(1024);
  history.push_back(lam);

  double step_scale = 1.0;
  long iter = 0;
  bool stalled = false;
  for (; iter < opts.max_iterations; ++iter) {
    // Gradient of the quotient at the normalized iterate.
    double dmax = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      double s = (u[j + 1] - u[j]) / c.h[j];
      qflux[j] = c.a_mid[j] * flux_phi(s, p);
      dmax = std::max(dmax, std::fabs(s));
    }
    double gmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double left = (i > 0) ? qflux[i - 1] : 0.0;
      double right = (i + 1 < n) ? qflux[i] : 0.0;
      g[i] = (left - right) - lam * c.mass[i] * flux_phi(u[i], p);
      gmax = std::max(gmax, std::fabs(g[i]));
    }
    g[n - 1] = 0.0;
    if (opts.dirichlet_left) g[0] = 0.0;

    // Preconditioner: current-iterate stiffness plus a lambda-shifted mass
    // term, solved over the free nodes.
    const double eps_d = 1e-8 * dmax + 1e-290;
    const std::size_t m = n - 1 - lo_free;
    lower.assign(m, 0.0);
    diag.assign(m, 0.0);
    upper.assign(m, 0.0);
    rhs.assign(m, 0.0);
    double umax = 0.0;
    for (double x : u) umax = std::max(umax, std::fabs(x));
    const double eps_u = 1e-8 * umax + 1e-290;
    for (std::size_t i = lo_free; i + 1 < n; ++i) {
      std::size_t k = i - lo_free;
      double cl = 0.0, cr = 0.0;
      if (i > 0) {
        double s = (u[i] - u[i - 1]) / c.h[i - 1];
        cl = c.a_mid[i - 1] * std::pow(s * s + eps_d * eps_d, 0.5 * p - 1.0) /
             c.h[i - 1];
      }
      {
        double s = (u[i + 1] - u[i]) / c.h[i];
        cr = c.a_mid[i] * std::pow(s * s + eps_d * eps_d, 0.5 * p - 1.0) / c.h[i];
      }
      double mshift = (lam + 1e-12) * c.mass[i] *
                      std::pow(u[i] * u[i] + eps_u * eps_u, 0.5 * p - 1.0);
      diag[k] = cl + cr + mshift;
      if (k > 0) lower[k] = -cl;
      if (i + 2 < n) upper[k] = -cr;
      rhs[k] = g[i];
    }
    thomas_solve(lower, diag, upper, rhs, sol);
    std::fill(d.begin(), d.end(), 0.0);
    double gd = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      d[lo_free + k] = sol[k];
      gd += sol[k] * g[lo_free + k];
    }
    if (!(gd > 0.0) || gmax == 0.0) {
      stalled = true;
      break;
    }

    // Armijo backtracking along the preconditioned descent direction; the
    // projection onto the nonnegative cone never increases the quotient.
    double s = std::min(step_scale * 2.0, 1e6);
    bool accepted = false;
    for (int bt = 0; bt < 70; ++bt) {
      for (std::size_t i = 0; i < n; ++i) u_try[i] = u[i] - s * d[i];
      u_try[n - 1] = 0.0;
      if (opts.dirichlet_left) u_try[0] = 0.0;
      normalize(u_try);
      double lam_try = quotient(u_try);
      if (lam_try <= lam - 1e-4 * s * gd) {
        u = u_try;
        lam = lam_try;
        step_scale = s;
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) {
      stalled = true;
      break;
    }
    history.push_back(lam);
    std::size_t k = history.size() - 1;
    if (k >= static_cast<std::size_t>(opts.stall_window)) {
      double drop = history[k - opts.stall_window] - history[k];
      if (drop < opts.stall_rel * std::max(lam, 1e-300)) {
        stalled = true;
        ++iter;
        break;
      }
    }
  }

  // Final unregularized Euler-Lagrange defect.
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double s = (u[j + 1] - u[j]) / c.h[j];
    qflux[j] = c.a_mid[j] * flux_phi(s, p);
  }
  double res = 0.0, scale = 0.0;
  for (std::size_t i = lo_free; i + 1 < n; ++i) {
    double left = (i > 0) ? qflux[i - 1] : 0.0;
    double el = (left - qflux[i]) - lam * c.mass[i] * flux_phi(u[i], p);
    res = std::max(res, std::fabs(el));
    scale = std::max(scale, lam * c.mass[i] * std::pow(std::fabs(u[i]), p - 1.0));
  }
  res = (scale > 0.0) ? res / scale : res;

  if (!stalled)
    throw ConvergenceError("p_rayleigh_minimize: iteration cap reached, residual " +
                               std::to_string(res),
                           res, iter);

  SpectralResult out;
  out.lambda = lam;
  out.residual = res;
  out.iterations = iter;
  out.converged = res <= opts.residual_tol;
  out.eigenfunction.grid = grid;
  out.eigenfunction.values = u;
  // Undo the internal area rescaling: true weighted p-norm equal to one.
  double back = std::exp(-c.shift / p);
  for (double& x : out.eigenfunction.values) x *= back;
  out.eigenfunction.derivative = nodal_derivative(grid, out.eigenfunction.values);
  out.eigenfunction.support_lo = grid.r_lo();
  out.eigenfunction.support_hi = grid.r_hi();
  return out;
}

}  // namespace pendkit
