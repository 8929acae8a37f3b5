#include "pendkit/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "pendkit/errors.hpp"

namespace pendkit {

namespace {

double eval_checked(const std::function<double(double)>& f, double x) {
  double y = f(x);
  if (!std::isfinite(y)) {
    throw NumericError("non-finite integrand at r=" + std::to_string(x));
  }
  return y;
}

struct SimpsonState {
  const std::function<double(double)>& f;
  long budget;
};

double simpson_recurse(SimpsonState& st, double a, double b, double fa, double fm,
                       double fb, double whole, double eps, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m);
  double rm = 0.5 * (m + b);
  double flm = eval_checked(st.f, lm);
  double frm = eval_checked(st.f, rm);
  double h = b - a;
  double left = (h / 12.0) * (fa + 4.0 * flm + fm);
  double right = (h / 12.0) * (fm + 4.0 * frm + fb);
  double err = (left + right - whole) / 15.0;
  if (std::fabs(err) <= eps || depth >= 60) {
    return left + right + err;
  }
  st.budget -= 2;
  if (st.budget <= 0) {
    throw NumericError("adaptive quadrature interval budget exhausted");
  }
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureOptions& opts) {
  if (!(a <= b)) throw ParameterError("adaptive_simpson: requires a <= b");
  if (a == b) return 0.0;
  SimpsonState st{f, opts.max_intervals};
  double fa = eval_checked(f, a);
  double fb = eval_checked(f, b);
  double fm = eval_checked(f, 0.5 * (a + b));
  double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  // Scale the absolute budget off a coarse pass; integrands here are
  // single-signed so the coarse value is a usable magnitude estimate.
  double scale = std::fabs(whole);
  if (scale == 0.0) scale = 1e-300;
  double eps = opts.rel_tol * scale;
  return simpson_recurse(st, a, b, fa, fm, fb, whole, eps, 0);
}

ImproperResult improper_integral(const std::function<double(double)>& f, double a,
                                 const ImproperOptions& opts) {
  if (!(a > 0.0)) throw ParameterError("improper_integral: requires a > 0");
  ImproperResult res;
  std::ostringstream trace;
  QuadratureOptions qopts;
  qopts.rel_tol = opts.rel_tol;

  double lo = a;
  double prev_inc = -1.0;
  int hot_streak = 0;  // consecutive non-decaying increments above the ratio
  for (int k = 0; k < opts.max_windows; ++k) {
    double hi = std::min(a * std::ldexp(1.0, k + 1), opts.domain_end);
    if (!(hi > lo)) break;
    double inc = adaptive_simpson(f, lo, hi, qopts);
    res.value += inc;
    res.last_increment = inc;
    res.windows = k + 1;
    trace << "window [" << lo << "," << hi << "] inc=" << inc << " total=" << res.value
          << "\n";

    if (res.value > opts.blowup_total) {
      trace << "decision: infinite (total exceeded " << opts.blowup_total << ")\n";
      res.finite = false;
      res.trace = trace.str();
      return res;
    }
    bool non_decaying = prev_inc >= 0.0 && inc >= prev_inc * (1.0 - 1e-12);
    if (non_decaying && inc > opts.diverge_ratio * res.value) {
      ++hot_streak;
    } else {
      hot_streak = 0;
    }
    if (hot_streak >= opts.consecutive - 1) {
      trace << "decision: infinite (" << opts.consecutive
            << " non-decaying increments above " << opts.diverge_ratio << " of total)\n";
      res.finite = false;
      res.trace = trace.str();
      return res;
    }
    if (inc <= opts.finite_cutoff * res.value) {
      trace << "decision: finite (increment below " << opts.finite_cutoff
            << " of total)\n";
      res.finite = true;
      res.trace = trace.str();
      return res;
    }
    prev_inc = inc;
    lo = hi;
    if (hi >= opts.domain_end) {
      // Domain ran out first: decide from the trend at the cut.
      if (non_decaying && inc > opts.diverge_ratio * res.value) {
        trace << "decision: infinite (growing integrand at domain end)\n";
        res.finite = false;
        res.trace = trace.str();
        return res;
      }
      if (inc <= 1e-6 * res.value) {
        trace << "decision: finite (negligible increment at domain end)\n";
        res.finite = true;
        res.trace = trace.str();
        return res;
      }
      throw ExtrapolationError(
          "improper_integral: domain ends before the tail trend is decided");
    }
  }
  // Window cap: a decaying tail that never met the finite cutoff.  Treat a
  // still-growing tail as divergent, otherwise accept the accumulated value.
  if (res.last_increment > opts.diverge_ratio * res.value) {
    res.finite = false;
    trace << "decision: infinite (window cap, increments still large)\n";
  } else {
    res.finite = true;
    trace << "decision: finite (window cap, decaying increments)\n";
  }
  res.trace = trace.str();
  return res;
}

}  // namespace pendkit
