#include "pendkit/dichotomy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pendkit/errors.hpp"
#include "pendkit/quadrature.hpp"

namespace pendkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One compactly supported radial test function with analytic derivative.
struct TestFunction {
  std::string id;
  double lo = 0.0, hi = 0.0;
  std::function<double(double)> value;
  std::function<double(double)> slope;
};

TestFunction make_bump(double a, double ramp, double plateau, int idx, int level) {
  TestFunction f;
  double b = a + ramp, c = b + plateau, d = c + ramp;
  f.lo = a;
  f.hi = d;
  f.id = "bump" + std::to_string(idx) + "@L" + std::to_string(level);
  f.value = [a, b, c, d](double r) {
    if (r < b) return smoothstep((r - a) / (b - a));
    if (r > c) return smoothstep((d - r) / (d - c));
    return 1.0;
  };
  f.slope = [a, b, c, d](double r) {
    if (r < b) return smoothstep_deriv((r - a) / (b - a)) / (b - a);
    if (r > c) return -smoothstep_deriv((d - r) / (d - c)) / (d - c);
    return 0.0;
  };
  return f;
}

// Power-law bump (1 - s^2)^beta on |s| <= 1: controlled polynomial decay
// toward the support edge.
TestFunction make_power(double center, double width, double beta, int idx, int level) {
  TestFunction f;
  f.lo = center - width;
  f.hi = center + width;
  f.id = "pow" + std::to_string(idx) + "@L" + std::to_string(level);
  f.value = [center, width, beta](double r) {
    double s = (r - center) / width;
    double t = 1.0 - s * s;
    return t > 0.0 ? std::pow(t, beta) : 0.0;
  };
  f.slope = [center, width, beta](double r) {
    double s = (r - center) / width;
    double t = 1.0 - s * s;
    if (t <= 0.0) return 0.0;
    return -2.0 * beta * s * std::pow(t, beta - 1.0) / width;
  };
  return f;
}

TestFunction dilate(const TestFunction& f, double lambda, int level) {
  TestFunction g;
  g.lo = f.lo * lambda;
  g.hi = f.hi * lambda;
  g.id = f.id.substr(0, f.id.find('@')) + "@L" + std::to_string(level);
  auto val = f.value;
  auto slp = f.slope;
  g.value = [val, lambda](double r) { return val(r / lambda); };
  g.slope = [slp, lambda](double r) { return slp(r / lambda) / lambda; };
  return g;
}

double probe_quotient(const ModelManifold& model, double p, double q,
                      const TestFunction& f) {
  auto num = adaptive_simpson(
      [&](double r) { return model.area(r) * std::pow(f.value(r), q); }, f.lo, f.hi);
  auto den = adaptive_simpson(
      [&](double r) {
        return model.area(r) * std::pow(std::fabs(f.slope(r)), p);
      },
      f.lo, f.hi);
  if (!(den > 0.0)) throw NumericError("sobolev_probe: degenerate test function");
  return std::pow(num, p / q) / den;
}

// Deterministic uniform draw in [lo, hi].
double draw(std::mt19937_64& rng, double lo, double hi) {
  double u = double(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

SobolevData sobolev_probe(const ModelManifold& model, double p, double q,
                          int family_size, std::uint64_t seed) {
  if (!(p > 1.0) || !(q >= p))
    throw ParameterError("sobolev_probe: requires 1 < p <= q");
  if (family_size < 10) throw ParameterError("sobolev_probe: family_size >= 10");

  SobolevData sob;
  sob.p = p;
  sob.q = q;

  const double step = 8.0;  // dilation multiplier per ladder level
  const double anchor = model.r_min() + 0.5;
  const double base_hi = anchor + 2.5;  // widest base support end

  // Ladder depth limited so the area element stays inside double range and
  // supports stay inside the (possibly tabulated) domain.
  int levels = 1;
  while (levels < 5) {
    double edge = base_hi * std::pow(step, levels);
    if (edge >= model.domain_end()) break;
    if (model.log_area(edge) > 600.0) break;
    ++levels;
  }

  std::vector<TestFunction> family;
  TestFunction bump0 = make_bump(anchor, 0.5, 1.0, 0, 0);
  TestFunction pow0 = make_power(anchor + 1.25, 1.25, 2.0, 0, 0);
  for (int L = 0; L < levels; ++L) {
    double lam = std::pow(step, L);
    family.push_back(L == 0 ? bump0 : dilate(bump0, lam, L));
    family.push_back(L == 0 ? pow0 : dilate(pow0, lam, L));
  }
  std::mt19937_64 rng(seed);
  int idx = 1;
  while (static_cast<int>(family.size()) < family_size) {
    double ramp = draw(rng, 0.2, 1.0);
    double plat = draw(rng, 0.2, 2.0);
    double off = draw(rng, 0.0, 1.0);
    if (idx % 2 == 0) {
      family.push_back(make_bump(anchor + off, ramp, plat, idx, 0));
    } else {
      family.push_back(make_power(anchor + off + ramp + 0.5 * plat, ramp + 0.5 * plat,
                                  draw(rng, 1.5, 3.0), idx, 0));
    }
    ++idx;
  }

  std::vector<double> ladder_bump, ladder_pow;
  for (const auto& f : family) {
    double quot = probe_quotient(model, p, q, f);
    sob.probe_trace.emplace_back(f.id, quot);
    sob.C = std::max(sob.C, quot);
    if (f.id.rfind("bump0@", 0) == 0) ladder_bump.push_back(quot);
    if (f.id.rfind("pow0@", 0) == 0) ladder_pow.push_back(quot);
  }

  // Monotone blow-up along a ladder: the last three dilation steps each
  // increase the quotient and together grow it by more than 10x.
  auto blows_up = [](const std::vector<double>& ladder) {
    std::size_t n = ladder.size();
    if (n < 4) return false;
    for (std::size_t i = n - 3; i < n; ++i)
      if (!(ladder[i] > ladder[i - 1])) return false;
    return ladder[n - 1] > 10.0 * ladder[n - 4];
  };
  sob.infinite = blows_up(ladder_bump) || blows_up(ladder_pow);
  return sob;
}

ConstantChain cutoff_constant_chain(double C, double p, double grad_bound) {
  if (!(C > 0.0) || !(p > 1.0) || !(grad_bound > 0.0))
    throw ParameterError("cutoff_constant_chain: inputs must be positive, p > 1");
  ConstantChain ch;
  ch.C1 = C * std::pow(2.0, p - 1.0);
  ch.C2 = ch.C1 * (1.0 + std::pow(p, p));
  ch.C3 = ch.C2 * std::pow(grad_bound, p);
  return ch;
}

DichotomyReport sobolev_dichotomy(const ModelManifold& model, const SobolevData& sob,
                                  double r0, double r1) {
  if (!(r0 < r1)) throw ParameterError("sobolev_dichotomy: requires r0 < r1");
  if (!(r0 > model.r_min()))
    throw ParameterError("sobolev_dichotomy: requires r0 > r_min");
  DichotomyReport rep;
  rep.probe_conditional = true;
  std::ostringstream tr;
  if (sob.infinite) {
    rep.verdict = DichotomyVerdict::HypothesisFailed;
    tr << "Sobolev probe blew up under dilation: no finite constant, the "
          "dichotomy hypothesis fails\n";
    rep.trace = tr.str();
    return rep;
  }

  double ramp_start = std::max(model.r_min(), 0.5 * r0);
  double grad_bound = (15.0 / 8.0) / (r0 - ramp_start);
  rep.constants = cutoff_constant_chain(sob.C, sob.p, grad_bound);

  double v0 = model.volume(r0);
  double v1 = model.volume(r1);
  rep.volume_lhs = std::pow(std::max(v1 - v0, 0.0), sob.p / sob.q);
  rep.volume_rhs = rep.constants.C3 * v0;
  rep.volume_inequality_holds = rep.volume_lhs <= rep.volume_rhs * (1.0 + 1e-9);

  EndClassification ec = classify_end(model, sob.p, r0);
  tr << ec.evidence;
  if (ec.verdict == EndVerdict::PHyperbolic) {
    rep.verdict = DichotomyVerdict::PHyperbolic;
    tr << "end is p-hyperbolic (probe-conditional hypothesis satisfied)\n";
    rep.trace = tr.str();
    return rep;
  }

  ImproperResult vol = model.total_volume();
  tr << "total volume: " << (vol.finite ? "finite" : "infinite") << "\n" << vol.trace;
  if (!vol.finite) {
    throw TheoremViolationError(
        "sobolev_dichotomy: parabolic end with finite probed constant and "
        "infinite volume; implementation bug or probe overestimate");
  }
  rep.verdict = DichotomyVerdict::FiniteVolume;
  double sup_lhs = std::pow(std::max(vol.value - v0, 0.0), sob.p / sob.q);
  rep.volume_lhs = std::max(rep.volume_lhs, sup_lhs);
  rep.volume_inequality_holds = sup_lhs <= rep.volume_rhs * (1.0 + 1e-9);
  tr << "volume inequality sup: " << sup_lhs << " vs C3 V(r0) = " << rep.volume_rhs
     << "\n";
  rep.trace = tr.str();
  return rep;
}

double mean_curvature_norm(const ImmersedEndProfile& profile, double q, double r0) {
  if (!(q >= 1.0)) throw ParameterError("mean_curvature_norm: requires q >= 1");
  if (!(r0 >= profile.model.r_min()))
    throw DomainError("mean_curvature_norm: r0 below the profile inner radius");
  ImproperOptions opts;
  opts.domain_end = profile.model.domain_end();
  ImproperResult res = improper_integral(
      [&](double t) {
        return std::pow(std::fabs(profile.mean_curvature(t)), q) *
               profile.model.area(t);
      },
      r0, opts);
  if (!res.finite) return kInf;
  return std::pow(res.value, 1.0 / q);
}

DichotomyReport immersed_end_dichotomy(const ImmersedEndProfile& profile, double p,
                                       double r0, std::vector<double> r_list) {
  const int m = profile.m;
  if (m < 3) throw ParameterError("immersed_end_dichotomy: requires m >= 3");
  if (!(p > 1.0 && p < m)) throw ParameterError("immersed_end_dichotomy: 1 < p < m");
  if (!(profile.sobolev_S > 0.0))
    throw ParameterError("immersed_end_dichotomy: S must be positive");
  const ModelManifold& model = profile.model;
  double r_e = model.r_min();
  if (!(r_e > 0.0) || !(model.area(r_e) > 0.0))
    throw ParameterError(
        "immersed_end_dichotomy: the end needs a positive inner radius with "
        "positive area element");
  if (!(r0 > r_e)) throw ParameterError("immersed_end_dichotomy: requires r0 > r_min");
  std::sort(r_list.begin(), r_list.end());

  const double S = profile.sobolev_S;
  const double C = 1.0 + std::pow(p, p);
  const double SC = S * C;
  const double exponent = p * m / double(m - p);
  const double theta = (m - p) / double(m);

  DichotomyReport rep;
  std::ostringstream tr;

  // Integrability hypothesis: ||H||_{L^q} finite for some q in [p, m].
  double best_q = 0.0, best_norm = kInf;
  for (int i = 0; i <= 4; ++i) {
    double q = p + (m - p) * i / 4.0;
    double norm = mean_curvature_norm(profile, q, r0);
    tr << "||H||_{L^" << q << "} = " << norm << "\n";
    if (norm < best_norm) {
      best_norm = norm;
      best_q = q;
    }
  }
  bool hypothesis_H = std::isfinite(best_norm);

  // Enlarge the inner cut until the curvature tail is small against 1/(2SC).
  double base = r0;
  if (hypothesis_H && best_norm > 0.0) {
    bool met = false;
    for (int k = 0; k < 60; ++k) {
      double tail = mean_curvature_norm(profile, best_q, base);
      if (std::pow(tail, p) < 1.0 / (2.0 * SC)) {
        met = true;
        break;
      }
      base *= 2.0;
    }
    if (!met) {
      hypothesis_H = false;
      base = kInf;
    }
  }
  rep.smallness_r0 = base;
  tr << "smallness cut r0' = " << base << "\n";

  bool inequality_ok = true;
  if (std::isfinite(base)) {
    auto phi = [r_e, base](double t) { return smoothstep((t - r_e) / (base - r_e)); };
    auto phi_slope = [r_e, base](double t) {
      return smoothstep_deriv((t - r_e) / (base - r_e)) / (base - r_e);
    };
    double boundary_term =
        adaptive_simpson(
            [&](double t) {
              return std::pow(phi_slope(t), p) * model.area(t);
            },
            r_e, base) +
        adaptive_simpson(
            [&](double t) {
              return std::pow(std::fabs(profile.mean_curvature(t)), p) *
                     model.area(t);
            },
            r_e, base);
    rep.h_bound = 2.0 * SC * boundary_term;

    for (double r : r_list) {
      if (!(r > base * (1.0 + 1e-9))) continue;
      RadialFunction f = annulus_potential(model, p, r_e, r, 2001);
      const auto& nodes = f.grid.nodes;
      const std::size_t n = nodes.size();
      double h = 0.0, rhs1 = 0.0, rhs2 = 0.0;
      for (std::size_t j = 0; j + 1 < n; ++j) {
        double mid = 0.5 * (nodes[j] + nodes[j + 1]);
        double w = nodes[j + 1] - nodes[j];
        double fmid = 0.5 * (f.values[j] + f.values[j + 1]);
        double amid = model.area(mid);
        if (mid >= base) h += w * amid * std::pow(fmid, exponent);
        if (mid <= base)
          rhs1 += w * amid * std::pow(fmid, p) * std::pow(phi_slope(mid), p);
        rhs2 += w * amid * std::pow(fmid, p) *
                std::pow(std::fabs(profile.mean_curvature(mid)), p);
      }
      rep.h_trace.emplace_back(r, h);
      double lhs = std::pow(h, theta) / SC;
      bool ok = lhs <= (rhs1 + rhs2) * (1.0 + 1e-8) + 1e-300;
      if (!ok) inequality_ok = false;
      tr << "r=" << r << " h=" << h << " lhs=" << lhs << " rhs=" << rhs1 + rhs2
         << (ok ? " ok" : " VIOLATED") << "\n";
    }
  }

  if (!hypothesis_H) {
    rep.verdict = DichotomyVerdict::HypothesisFailed;
    tr << "curvature integrability fails for every q in [p, m]\n";
  } else if (!inequality_ok) {
    rep.verdict = DichotomyVerdict::HypothesisFailed;
    tr << "tracked inequality violated: supplied S is not a valid constant "
          "for this profile\n";
  } else {
    EndClassification ec = classify_end(model, p, r0);
    ImproperResult vol = model.total_volume();
    if (ec.verdict == EndVerdict::PHyperbolic) {
      rep.verdict = DichotomyVerdict::PHyperbolic;
    } else if (vol.finite) {
      rep.verdict = DichotomyVerdict::FiniteVolume;
    } else {
      // Parabolic with infinite volume and integrable curvature: the
      // profile cannot come from an immersion satisfying the ambient
      // hypotheses, so the honest verdict is a failed hypothesis, never a
      // theorem violation.
      rep.verdict = DichotomyVerdict::HypothesisFailed;
      tr << "parabolic end with infinite volume: the unverifiable immersion "
            "hypotheses must fail for this profile\n";
    }
  }
  rep.constants = ConstantChain{C, SC, rep.h_bound};
  rep.trace = tr.str();
  return rep;
}

const char* to_string(DichotomyVerdict v) {
  switch (v) {
    case DichotomyVerdict::FiniteVolume:
      return "FiniteVolume";
    case DichotomyVerdict::PHyperbolic:
      return "PHyperbolic";
    case DichotomyVerdict::HypothesisFailed:
      return "HypothesisFailed";
  }
  return "?";
}

}  // namespace pendkit
