#include "utm/estimate_auditor.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "utm/error.hpp"
#include "utm/quadrature.hpp"

namespace utm {

namespace {

using Fn = std::function<double(double)>;

// Graded rule: x = p + h e^u with u in [umin, 0], composite Gauss panels of the given width.
struct Graded {
  double umin;
  double width;
  int order;
};

constexpr Graded kFine{-30.0, 2.0, 8};
constexpr Graded kFast{-20.0, 4.0, 6};
constexpr double kTailScale = 1e12;

double pw(double x, double e) { return std::pow(1.0 + std::abs(x), -e); }

// integral over [p, p + h] (h > 0), graded toward p when dir = +1, toward p + h when dir = -1
double graded_half(const Fn& f, double anchor, double h, int dir, const Graded& r) {
  const auto& g = gauss_legendre(r.order);
  // keep anchor + y distinguishable from anchor in floating point
  double umin = r.umin;
  if (anchor != 0.0) umin = std::min(-1.0, std::max(umin, std::log(16 * DBL_EPSILON * std::abs(anchor) / h)));
  const int panels = static_cast<int>(std::ceil(-umin / r.width));
  const double w = -umin / panels;
  double s = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double u0 = umin + k * w;
    for (int q = 0; q < r.order; ++q) {
      const double u = u0 + 0.5 * w * (g.x[q] + 1.0);
      const double y = h * std::exp(u);
      s += 0.5 * w * g.w[q] * y * f(anchor + dir * y);
    }
  }
  return s;
}

double graded_segment(const Fn& f, double p, double q, const Graded& r) {
  if (!(q > p)) return 0.0;
  const double h = 0.5 * (q - p);
  return graded_half(f, p, h, +1, r) + graded_half(f, q, h, -1, r);
}

// integral over [q, inf) (dir = +1) or (-inf, q] (dir = -1) with |x|^{-decay} tail correction
double graded_tail(const Fn& f, double q, int dir, double decay, const Graded& r) {
  const auto& g = gauss_legendre(r.order);
  const double S = std::max(1.0, std::abs(q));
  const double umax = std::log(kTailScale);
  const int panels = static_cast<int>(std::ceil((umax - r.umin) / r.width));
  const double w = (umax - r.umin) / panels;
  double s = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double u0 = r.umin + k * w;
    for (int qq = 0; qq < r.order; ++qq) {
      const double u = u0 + 0.5 * w * (g.x[qq] + 1.0);
      const double y = S * std::exp(u);
      s += 0.5 * w * g.w[qq] * y * f(q + dir * y);
    }
  }
  const double X = q + dir * S * kTailScale;
  s += f(X) * std::abs(X) / (decay - 1.0);
  return s;
}

double line_integral_r(const Fn& f, std::vector<double> kinks, double decay, const Graded& r) {
  if (!(decay > 1.0)) throw NumericalError("line integral does not converge (decay <= 1)");
  if (kinks.empty()) kinks.push_back(0.0);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  double s = graded_tail(f, kinks.front(), -1, decay, r) + graded_tail(f, kinks.back(), +1, decay, r);
  for (std::size_t i = 0; i + 1 < kinks.size(); ++i) s += graded_segment(f, kinks[i], kinks[i + 1], r);
  return s;
}

double interval_integral_r(const Fn& f, double lo, double hi, std::vector<double> kinks, const Graded& r) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> pts{lo, hi};
  for (double k : kinks)
    if (k > lo && k < hi) pts.push_back(k);
  std::sort(pts.begin(), pts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += graded_segment(f, pts[i], pts[i + 1], r);
  return s;
}

// seeded uniforms that do not depend on the standard library's distributions
struct Sampler {
  std::mt19937_64 rng;
  explicit Sampler(std::uint64_t seed) : rng(seed) {}
  double unit() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  double sign() { return (rng() & 1) ? 1.0 : -1.0; }
};

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// r(t) with 1 - t^m - (1-t)^m = t (1 - t) r(t); coefficients in increasing degree
std::vector<double> dm_reduced(int m) {
  std::vector<double> q1(m - 1);
  for (int k = 0; k <= m - 2; ++k) q1[k] = binom(m, k + 1) * ((k % 2) ? -1.0 : 1.0);
  std::vector<double> r(m - 2);
  double prev = 0.0;
  for (int k = 0; k <= m - 3; ++k) {
    r[k] = q1[k] + prev;
    prev = r[k];
  }
  return r;
}

double horner(const std::vector<double>& c, double t) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * t + *it;
  return s;
}

void check_m(int m) {
  if (m < 3 || m % 2 == 0) throw DomainError("m must be odd and at least 3");
}

// lower bound for dm_ratio used to size integration ranges (90% of the numerical infimum)
double dm_floor(int m, DmWeight w) {
  const auto r = dm_reduced(m);
  double lo = std::numeric_limits<double>::infinity();
  for (int i = -20000; i <= 20000; ++i) {
    const double t = i * 1e-3 * (1.0 + std::abs(i) * 1e-3);
    double v = std::abs(horner(r, t));
    if (w == DmWeight::xi1) {
      if (std::abs(t) < 1e-9) continue;
      v /= std::pow(std::abs(t), m - 3);
    }
    lo = std::min(lo, v);
  }
  return 0.9 * lo;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct SupResult {
  double value;
  std::vector<double> where;
};

// sample `n` points from `draw(sampler, radius)` and keep the extreme of `eval`
template <class Draw, class Eval>
SupResult extreme(int n, std::uint64_t seed, double radius, bool minimum, Draw draw, Eval eval) {
  Sampler s(seed);
  SupResult best{minimum ? INFINITY : -INFINITY, {}};
  for (int i = 0; i < n; ++i) {
    std::vector<double> pt = draw(s, radius);
    const double v = eval(pt);
    if (!std::isfinite(v)) return {v, pt};
    if (minimum ? v < best.value : v > best.value) best = {v, pt};
  }
  return best;
}

template <class Draw, class Eval>
AuditReport run_audit(const std::string& id, const AuditOptions& opt, bool minimum, Draw draw, Eval eval) {
  if (opt.samples < 1000) throw ConfigError("audits need at least 1000 samples");
  if (!(opt.radius > 0)) throw ConfigError("audit radius must be positive");
  AuditReport rep;
  rep.inequality_id = id;
  rep.samples = opt.samples;
  rep.seed = opt.seed;
  auto base = extreme(opt.samples, opt.seed, opt.radius, minimum, draw, eval);
  rep.value = base.value;
  rep.worst_location = base.where;
  bool ok = std::isfinite(rep.value);
  if (opt.stability && ok) {
    auto big = extreme(4 * opt.samples, opt.seed + 1, 2.0 * opt.radius, minimum, draw, eval);
    rep.stability_delta = std::abs(big.value - base.value) / std::max(std::abs(base.value), 1e-300);
    ok = ok && std::isfinite(big.value) && rep.stability_delta < opt.stable_tol;
  }
  if (opt.sweep && std::isfinite(rep.value)) {
    std::vector<double> lx, ly, vals;
    for (double f : {1.0, 2.0, 4.0, 8.0}) {
      auto r = extreme(opt.samples, opt.seed, f * opt.radius, minimum, draw, eval);
      vals.push_back(r.value);
      lx.push_back(std::log(f));
      ly.push_back(std::log(std::max(std::abs(r.value), 1e-300)));
    }
    rep.growth_exponent = ls_slope(lx, ly);
    rep.growth_flagged = rep.growth_exponent > 0.1 && std::abs(vals.back()) > 1.25 * std::abs(vals.front());
    ok = ok && !rep.growth_flagged;
  }
  rep.bounded = ok;
  return rep;
}

// segments of [lo, hi] whose midpoints satisfy `keep`, split at `breaks`
template <class Keep>
double integrate_pieces(const Fn& f, double lo, double hi, std::vector<double> breaks, Keep keep, const Graded& r) {
  std::vector<double> pts{lo, hi};
  for (double b : breaks)
    if (b > lo && b < hi) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i + 1] > pts[i] && keep(0.5 * (pts[i] + pts[i + 1]))) s += graded_segment(f, pts[i], pts[i + 1], r);
  return s;
}

// xi^m - xi1^m without cancellation when xi1 is close to xi
double pow_diff(int m, double xi, double xi1) {
  double s = 0.0;
  for (int k = 0; k < m; ++k) s += std::pow(xi, m - 1 - k) * std::pow(xi1, k);
  return (xi - xi1) * s;
}

}  // namespace

// --- d_m ----------------------------------------------------------------------------------

double dm(int m, double xi, double xi1) {
  check_m(m);
  double s = 0.0;
  for (int k = 1; k <= m - 1; ++k)
    s += binom(m, k) * ((k % 2) ? 1.0 : -1.0) * std::pow(xi, m - k) * std::pow(xi1, k);
  return s;
}

double dm_ratio(int m, double xi, double xi1, DmWeight w) {
  check_m(m);
  if (xi == 0.0 || xi1 == 0.0 || xi == xi1) throw DomainError("dm_ratio: xi, xi1 and xi - xi1 must be nonzero");
  const double t = xi1 / xi;
  double v = std::abs(horner(dm_reduced(m), t));
  if (w == DmWeight::xi1) v /= std::pow(std::abs(t), m - 3);
  return v;
}

AuditReport audit_dm_bound(int m, DmWeight w, const AuditOptions& opt) {
  check_m(m);
  auto draw = [](Sampler& s, double R) {
    for (;;) {
      const double a = s.sign() * s.log_uniform(1.0, 1e6 * R), b = s.sign() * s.log_uniform(1.0, 1e6 * R);
      if (std::abs(a - b) >= 1.0) return std::vector<double>{a, b};
    }
  };
  auto eval = [m, w](const std::vector<double>& p) { return dm_ratio(m, p[0], p[1], w); };
  AuditOptions o = opt;
  o.sweep = false;
  auto rep = run_audit(w == DmWeight::xi ? "dm-xi" : "dm-xi1", o, true, draw, eval);
  rep.parameters = {{"m", static_cast<double>(m)}};
  rep.bounded = rep.bounded && rep.value > 0.0;
  rep.note = "empirical c_m = min ratio over |xi|, |xi1|, |xi - xi1| >= 1";
  return rep;
}

// --- calculus inequalities -----------------------------------------------------------------

double line_integral(const Fn& f, std::vector<double> kinks, double decay) {
  return line_integral_r(f, std::move(kinks), decay, kFine);
}

double interval_integral(const Fn& f, double lo, double hi, std::vector<double> kinks) {
  return interval_integral_r(f, lo, hi, std::move(kinks), kFine);
}

double calc_ratio(int which, double l, double l2, double a, double c) {
  switch (which) {
    case 1: {
      double lhs = line_integral([&](double x) { return pw(x - a, 2 * l) * pw(x - c, 2 * l); }, {a, c}, 4 * l);
      return lhs / pw(a - c, 2 * l);
    }
    case 2: {
      double lhs = line_integral([&](double x) { return pw(x, 2 * l) / std::sqrt(std::abs(a - x)); }, {0.0, a},
                                 2 * l + 0.5);
      return lhs / pw(a, 0.5);
    }
    case 3: {
      double lhs = line_integral([&](double x) { return pw(x - a, 2 * (1 - l)) * pw(x - c, 2 * l2); }, {a, c},
                                 2 * (1 - l) + 2 * l2);
      return lhs / pw(a - c, 2 * (1 - l));
    }
    case 4: {
      if (!(c > 0)) throw DomainError("calc inequality 4 needs c > 0");
      double lhs = interval_integral([&](double x) { return pw(x, 2 * (1 - l)) / std::sqrt(std::abs(a - x)); }, -c, c,
                                     {0.0, a});
      return lhs / (std::pow(1 + c, 2 * (l - 0.5)) * pw(a, 0.5));
    }
    case 5: {
      double lhs = line_integral([&](double x) { return pw(x - a, 2 * l) * pw(x - c, 2 * l2); }, {a, c}, 2 * l + 2 * l2);
      return lhs / pw(a - c, 2 * l + 2 * l2 - 1);
    }
    default:
      throw DomainError("calculus inequality index must be 1..5");
  }
}

AuditReport audit_calc_inequality(int which, const AuditOptions& opt) {
  if (which < 1 || which > 5) throw DomainError("calculus inequality index must be 1..5");
  auto draw = [which](Sampler& s, double R) {
    const double big = 1e6 * R;
    auto signed_log = [&](double lo, double hi) { return s.sign() * s.log_uniform(lo, hi); };
    double l = 0, l2 = 0, a = 0, c = 0;
    switch (which) {
      case 1:
      case 2:
        l = s.uniform(0.55, 0.95);
        break;
      case 3:
        l = s.uniform(0.55, 0.95);
        l2 = s.uniform(0.55, 1.5);
        break;
      case 4:
        l = s.uniform(0.55, 0.95);
        break;
      case 5:
        l2 = s.uniform(0.30, 0.45);
        l = s.uniform(l2, 0.45);
        break;
    }
    a = (s.unit() < 0.1) ? 0.0 : signed_log(1e-3, big);
    if (which == 4)
      c = s.log_uniform(1e-2, big);
    else if (which != 2)
      c = a + signed_log(1e-3, big);
    return std::vector<double>{l, l2, a, c};
  };
  auto eval = [which](const std::vector<double>& p) { return calc_ratio(which, p[0], p[1], p[2], p[3]); };
  AuditOptions o = opt;
  o.sweep = false;
  auto rep = run_audit("calc-" + std::to_string(which), o, false, draw, eval);
  rep.note = "location = (l, l', a, c); ratio = lhs / rhs";
  return rep;
}

// --- multiplier audits ---------------------------------------------------------------------

bool in_BI(int m, double xi, double tau, double xi1, double tau1) {
  const double r = std::abs(tau - tau1 - std::pow(xi - xi1, m)), s1 = std::abs(tau1 - std::pow(xi1, m)),
               s = std::abs(tau - std::pow(xi, m));
  return r <= s1 && s1 <= s && std::abs(xi1) > 1 && std::abs(xi - xi1) > 1 && std::abs(xi) > 1;
}

bool in_BII(int m, double xi, double tau, double xi1, double tau1) {
  const double r = std::abs(tau - tau1 - std::pow(xi - xi1, m)), s1 = std::abs(tau1 - std::pow(xi1, m)),
               s = std::abs(tau - std::pow(xi, m));
  return r <= s1 && s <= s1 && std::abs(xi1) > 1 && std::abs(xi - xi1) > 1 && std::abs(xi) > 1;
}

bool in_BIII(int m, double xi, double tau, double xi1, double tau1) {
  return std::abs(tau1 - std::pow(xi1, m)) <= std::abs(tau - std::pow(xi, m)) && std::abs(xi1) > 1 &&
         std::abs(xi - xi1) <= 1;
}

bool in_BIV(int m, double xi, double tau, double xi1, double tau1) {
  return std::abs(tau - std::pow(xi, m)) <= std::abs(tau1 - std::pow(xi1, m)) && std::abs(xi1) > 1 &&
         std::abs(xi - xi1) <= 1;
}

double theta4(const ThetaParams& p, double xi, double tau) {
  check_m(p.m);
  if (std::abs(xi) > 2.0) return 0.0;
  const int m = p.m;
  const double lo = std::max(-1.0, xi - 1.0), hi = std::min(1.0, xi + 1.0);
  const double decay = 4.0 * std::max(p.b1, p.alpha1);
  auto outer = [&](double xi1) {
    const double a = std::pow(xi1, m), e = tau - std::pow(xi - xi1, m);
    auto g = [&](double t1) {
      const double d1 = std::pow(1 + std::abs(t1 - a), p.b1) + std::pow(1 + std::abs(t1), p.alpha1);
      const double d2 = std::pow(1 + std::abs(e - t1), p.b1) + std::pow(1 + std::abs(tau - t1), p.alpha1);
      return 1.0 / (d1 * d1 * d2 * d2);
    };
    return line_integral_r(g, {a, 0.0, e, tau}, decay, kFast);
  };
  return xi * xi * pw(tau - std::pow(xi, m), 2 * p.b) * interval_integral_r(outer, lo, hi, {0.0}, kFast);
}

double theta_microlocal(int which, const ThetaParams& p, double freq, double mod) {
  check_m(p.m);
  const int m = p.m;
  const double sig = std::abs(mod);
  switch (which) {
    case 2: {
      const double xi = freq;
      if (std::abs(xi) <= 1.0) return 0.0;
      const double K = 3.0 * sig / (dm_floor(m, DmWeight::xi) * std::pow(std::abs(xi), m - 2));
      const double R = 0.5 * (std::abs(xi) + std::sqrt(xi * xi + 4 * K)) + 1.0;
      auto inner = [&](double xi1) {
        const double P = mod + dm(m, xi, xi1);
        double lo = -sig, hi = sig;
        if (P > 0) lo = std::max(lo, 0.5 * P);
        if (P < 0) hi = std::min(hi, 0.5 * P);
        auto g = [&](double d1) { return pw(d1 - P, 2 * p.b1) * pw(d1, 2 * p.b1); };
        return interval_integral_r(g, lo, hi, {0.0, P}, kFast);
      };
      auto keep = [xi](double x1) { return std::abs(x1) > 1 && std::abs(xi - x1) > 1; };
      return xi * xi * pw(mod, 2 * p.b) *
             integrate_pieces(inner, -R, R, {-1.0, 1.0, xi - 1, xi + 1, 0.5 * xi}, keep, kFast);
    }
    case 3: {
      const double xi1 = freq;
      if (std::abs(xi1) <= 1.0) return 0.0;
      const double K = 3.0 * sig / (dm_floor(m, DmWeight::xi1) * std::pow(std::abs(xi1), m - 2));
      const double R = 0.5 * (std::abs(xi1) + std::sqrt(xi1 * xi1 + 4 * K)) + 1.0;
      auto inner = [&](double xi) {
        const double c = mod - dm(m, xi, xi1);
        const double lo = std::max(-sig, c - sig), hi = std::min(sig, c + sig);
        auto g = [&](double d) { return pw(d - c, 2 * p.b1) * pw(d, 2 * p.b); };
        return xi * xi * interval_integral_r(g, lo, hi, {0.0, c}, kFast);
      };
      auto keep = [xi1](double x) { return std::abs(x) > 1 && std::abs(x - xi1) > 1; };
      return pw(mod, 2 * p.b1) * integrate_pieces(inner, -R, R, {-1.0, 1.0, xi1 - 1, xi1 + 1, 0.5 * xi1}, keep, kFast);
    }
    case 5: {
      const double xi = freq;
      auto inner = [&](double xi1) {
        const double d = dm(m, xi, xi1), E = pow_diff(m, xi, xi1);
        auto g = [&](double d1) {
          const double den = std::pow(1 + std::abs(mod - d1 + d), p.b1) + std::pow(1 + std::abs(E + mod - d1), p.alpha1);
          return pw(d1, 2 * p.b1) / (den * den);
        };
        return interval_integral_r(g, -sig, sig, {0.0, mod + d, mod + E}, kFast);
      };
      auto keep = [](double x1) { return std::abs(x1) > 1; };
      return xi * xi * pw(mod, 2 * p.b) * integrate_pieces(inner, xi - 1, xi + 1, {-1.0, 1.0}, keep, kFast);
    }
    case 6: {
      const double xi1 = freq;
      if (std::abs(xi1) <= 1.0) return 0.0;
      auto inner = [&](double xi) {
        const double d = dm(m, xi, xi1), E = pow_diff(m, xi, xi1);
        auto g = [&](double dd) {
          const double den = std::pow(1 + std::abs(dd - mod + d), p.b1) + std::pow(1 + std::abs(E + dd - mod), p.alpha1);
          return pw(dd, 2 * p.b) / (den * den);
        };
        return xi * xi * interval_integral_r(g, -sig, sig, {0.0, mod - d, mod - E}, kFast);
      };
      auto keep = [](double) { return true; };
      return pw(mod, 2 * p.b1) * integrate_pieces(inner, xi1 - 1, xi1 + 1, {}, keep, kFast);
    }
    default:
      throw DomainError("microlocal multiplier index must be 2, 3, 5 or 6");
  }
}

namespace {

std::map<std::string, double> theta_params(const ThetaParams& p) {
  return {{"m", static_cast<double>(p.m)}, {"b", p.b}, {"b'", p.b1}, {"alpha'", p.alpha1}};
}

}  // namespace

AuditReport audit_theta4(const ThetaParams& p, const AuditOptions& opt) {
  check_m(p.m);
  const bool in_range = p.b >= 0 && p.alpha1 > 0.5;
  auto draw = [](Sampler& s, double R) {
    const double xi = s.uniform(-2.2, 2.2);
    const double tau = (s.unit() < 0.05) ? 0.0 : s.sign() * s.log_uniform(1e-2, 1e6 * R);
    return std::vector<double>{xi, tau};
  };
  auto eval = [&p](const std::vector<double>& x) { return theta4(p, x[0], x[1]); };
  auto rep = run_audit("theta4", opt, false, draw, eval);
  rep.parameters = theta_params(p);
  rep.note = in_range ? "location = (xi, tau)" : "location = (xi, tau); parameters outside the lemma range (b >= 0, alpha' > 1/2)";
  return rep;
}

AuditReport audit_microlocal_theta(int which, const ThetaParams& p, const AuditOptions& opt) {
  check_m(p.m);
  if (which != 2 && which != 3 && which != 5 && which != 6)
    throw DomainError("microlocal multiplier index must be 2, 3, 5 or 6");
  const int m = p.m;
  double lower = 0.0;
  bool needs_alpha = false;
  if (which == 2) lower = (6.0 + 3 * m) / (12.0 * m);
  if (which == 3) lower = std::max((4.0 + 3 * (m - 1)) / (12.0 * (m - 1)), (6.0 + 3 * m) / (12.0 * m));
  if (which == 5 || which == 6) {
    lower = 1.0 / 3.0;
    needs_alpha = true;
  }
  const bool in_range = p.b1 >= lower && p.b1 <= p.b && p.b < 0.5 && (!needs_alpha || p.alpha1 > 0.5);

  auto draw = [which](Sampler& s, double R) {
    const double lo = (which == 5) ? 0.1 : 1.0;
    const double f = s.sign() * s.log_uniform(lo, 10.0 * R);
    const double mod = s.sign() * s.log_uniform(1e-2, 1e3 * R * R * R);
    return std::vector<double>{f, mod};
  };
  auto eval = [which, &p](const std::vector<double>& x) { return theta_microlocal(which, p, x[0], x[1]); };
  AuditOptions o = opt;
  o.sweep = true;
  auto rep = run_audit("theta" + std::to_string(which), o, false, draw, eval);
  rep.parameters = theta_params(p);
  std::ostringstream os;
  os << "location = (" << ((which == 2 || which == 5) ? "xi, tau - xi^m" : "xi1, tau1 - xi1^m") << ")";
  if (!in_range) os << "; parameters outside the lemma range (b' >= " << lower << ")";
  rep.note = os.str();
  return rep;
}

double G_value(int which, double s, double b, int m, int l, double tau) {
  check_m(m);
  const double root = (tau >= 0 ? 1.0 : -1.0) * std::pow(std::abs(tau), 1.0 / m);
  double decay = m * (2 - 2 * b) - 2 * l;
  if (which == 1) decay += 2 * s;
  auto f = [&](double xi) {
    double v = std::pow(xi * xi, l) * pw(tau - std::pow(xi, m), 2 - 2 * b);
    if (which == 1) v *= pw(xi, 2 * s);
    return v;
  };
  return line_integral(f, {0.0, root}, decay);
}

std::vector<double> log_tau_grid(double tau_max, int n) {
  if (n < 3 || !(tau_max > 1e-2)) throw DomainError("log_tau_grid: need n >= 3 and tau_max > 1e-2");
  const int half = (n - 1) / 2;
  std::vector<double> g;
  const double a = std::log10(1e-2), b = std::log10(tau_max);
  for (int i = half - 1; i >= 0; --i) g.push_back(-std::pow(10.0, a + (b - a) * i / std::max(1, half - 1)));
  g.push_back(0.0);
  for (int i = 0; i < half; ++i) g.push_back(std::pow(10.0, a + (b - a) * i / std::max(1, half - 1)));
  return g;
}

AuditReport audit_G(int which, double s, double b, int m, int l, const std::vector<double>& grid) {
  check_m(m);
  const int j = (m - 1) / 2;
  if (which == 1 && !(s >= -1.0 && s <= 0.5 && b >= 0.0 && b < 0.5))
    throw DomainError("G1 estimate is stated for -1 <= s <= 1/2 and 0 <= b < 1/2");
  if (which == 2 && !(b > 0.0 && b < 0.5)) throw DomainError("G2 estimate is stated for 0 < b < 1/2");
  if (which != 1 && which != 2) throw DomainError("G index must be 1 or 2");
  if (l < 0 || l >= j) throw DomainError("l must lie in 0..j-1");
  if (grid.size() < 1000) throw ConfigError("audits need at least 1000 samples");
  const double expo = (which == 1) ? 2.0 * (s + j - l) / m : 2.0 * (j - l) / m;
  auto sup = [&](const std::vector<double>& g, std::vector<double>& where) {
    double best = -INFINITY;
    for (double t : g) {
      const double v = std::pow(1 + std::abs(t), expo) * G_value(which, s, b, m, l, t);
      if (v > best) {
        best = v;
        where = {t};
      }
    }
    return best;
  };
  AuditReport rep;
  rep.inequality_id = which == 1 ? "G1" : "G2";
  rep.parameters = {{"s", s}, {"b", b}, {"m", static_cast<double>(m)}, {"l", static_cast<double>(l)}};
  rep.samples = static_cast<int>(grid.size());
  rep.value = sup(grid, rep.worst_location);
  double tmax = 0.0;
  for (double t : grid) tmax = std::max(tmax, std::abs(t));
  std::vector<double> w2;
  const double v2 = sup(log_tau_grid(2 * tmax, 4 * static_cast<int>(grid.size()) + 1), w2);
  rep.stability_delta = std::abs(v2 - rep.value) / std::max(std::abs(rep.value), 1e-300);
  rep.bounded = std::isfinite(rep.value) && rep.stability_delta < 0.25;
  rep.note = which == 1 ? "weight (1+|tau|)^{2(s+j-l)/m}" : "weight (1+|tau|)^{2(j-l)/m}";
  return rep;
}

// --- discrete Bourgain norm ---------------------------------------------------------------

double discrete_bourgain_norm(const SolutionField& f, int m, double s, double b, double alpha, bool y_norm) {
  check_m(m);
  const std::size_t nx = f.nx(), nt = f.nt();
  if (nx < 2 || nt < 2) throw DomainError("bourgain norm needs at least two points per axis");
  if (!f.grid().is_uniform()) throw DomainError("bourgain norm needs a uniform grid");
  const double hx = f.x[1] - f.x[0], ht = f.t[1] - f.t[0];
  const std::size_t Nx = 2 * nx, Nt = 2 * nt;
  Eigen::FFT<double> fft;
  std::vector<std::vector<cd>> cols(Nt, std::vector<cd>(Nx, 0.0));
  std::vector<cd> buf(Nx), out;
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::size_t i = 0; i < Nx; ++i) buf[i] = i < nx ? f.at(i, k) : cd(0.0);
    fft.fwd(out, buf);
    cols[k] = out;
  }
  std::vector<cd> tb(Nt), tout;
  const double dxi = 2 * std::numbers::pi / (Nx * hx), dtau = 2 * std::numbers::pi / (Nt * ht);
  double sum = 0.0;
  for (std::size_t i = 0; i < Nx; ++i) {
    for (std::size_t k = 0; k < Nt; ++k) tb[k] = cols[k][i];
    fft.fwd(tout, tb);
    const double xi = (i < Nx / 2 ? double(i) : double(i) - double(Nx)) * dxi;
    for (std::size_t k = 0; k < Nt; ++k) {
      const double tau = (k < Nt / 2 ? double(k) : double(k) - double(Nt)) * dtau;
      const double mod = std::pow(1 + std::abs(tau - std::pow(xi, m)), b);
      double w;
      if (y_norm)
        w = std::pow(1 + std::abs(tau), s / m) * mod;
      else
        w = std::pow(1 + std::abs(xi), s) * mod + (std::abs(xi) < 1 ? std::pow(1 + std::abs(tau), alpha) : 0.0);
      sum += w * w * std::norm(tout[k] * (hx * ht));
    }
  }
  return std::sqrt(sum * dxi * dtau);
}

}  // namespace utm
