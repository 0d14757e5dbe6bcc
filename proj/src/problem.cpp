#include "utm/problem.hpp"

#include <cmath>
#include <numbers>

#include "utm/error.hpp"

namespace utm {

ValidationResult validate_spec(const ProblemSpec& spec) {
  ValidationResult r;
  if (spec.m < 3 || spec.m % 2 == 0) {
    r.errors.push_back(spec.m % 2 == 0 ? "m must be odd" : "m must be an odd integer >= 3");
  }
  const int j = (spec.m - 1) / 2;
  if (r.errors.empty() && static_cast<int>(spec.g.size()) != j)
    r.errors.push_back("expected " + std::to_string(j) + " boundary data, got " + std::to_string(spec.g.size()));
  if (!(spec.T > 0.0) || !std::isfinite(spec.T)) r.errors.push_back("T must be positive");
  if (spec.nonlinear && !(spec.T > 0.0 && spec.T < 0.5)) r.errors.push_back("T must lie in (0, 1/2) for the nonlinear problem");
  if (!std::isfinite(spec.s)) r.errors.push_back("s must be finite");
  r.ok = r.errors.empty();
  if (r.ok) {
    r.value.spec = spec;
    r.value.j = j;
    for (int l = 0; l < j; ++l)
      if (std::abs(spec.s - (l + 0.5)) < 1e-14)
        r.value.warnings.push_back("s = " + std::to_string(l) + ".5 is an excluded Sobolev index");
  }
  return r;
}

ValidatedSpec validated(const ProblemSpec& spec) {
  auto r = validate_spec(spec);
  if (!r.ok) {
    std::string msg;
    for (const auto& e : r.errors) msg += (msg.empty() ? "" : "; ") + e;
    throw ConfigError(msg);
  }
  return r.value;
}

std::vector<CompatibilityEntry> compatibility_check(const ValidatedSpec& v, double tol) {
  std::vector<CompatibilityEntry> out;
  const auto& sp = v.spec;
  for (int l = 0; l < v.j; ++l) {
    CompatibilityEntry e{l, sp.s > l + 0.5, true, 0.0};
    const double du = sp.u0.derivative(l, 0.0);
    e.residual = std::abs(du - sp.g[l](0.0));
    e.satisfied = e.residual <= tol;
    out.push_back(e);
  }
  return out;
}

double beta(double s, int m) {
  if (m < 3 || m % 2 == 0) throw DomainError("beta: m must be an odd integer >= 3");
  const double j = (m - 1) / 2;
  const double lo = -j + 0.25;
  if (!(s > lo)) throw DomainError("beta: s must exceed -j + 1/4 = " + std::to_string(lo));
  double b;
  if (s >= 0.0)
    b = std::min(1.0 / (12.0 * m), (m - s) / (3.0 * m));
  else if (s > -0.5)
    b = std::min((j - 0.75) / (32.0 * m), (s + 0.5) / (2.0 * m));
  else
    b = (s - lo) / (32.0 * m);
  if (!(b > 0.0)) throw DomainError("beta: s = " + std::to_string(s) + " gives a non-positive value");
  return b;
}

ParameterWindow parameter_window(double s, int m) {
  const double be = beta(s, m);
  return {s, be, 0.5 - be, 0.5 - 0.5 * be, 0.5 + 0.5 * be, 0.5 + be};
}

double log_lifespan(double s, int m, double data_norm, double c2) {
  if (!(data_norm >= 0.0)) throw DomainError("lifespan: data norm must be nonnegative");
  if (!(c2 > 0.0)) throw DomainError("lifespan: c2 must be positive");
  const double be = beta(s, m);
  return std::log(0.5) - (2.0 / be) * std::log1p(64.0 * c2 * c2 * data_norm);
}

double lifespan(double s, int m, double data_norm, double c2) {
  return std::exp(log_lifespan(s, m, data_norm, c2));
}

namespace {

double norm_from_poly(const PiecewisePoly& P, double s, double xi_max, int points) {
  std::vector<cd> xi(points);
  const double h = 2.0 * xi_max / (points - 1);
  for (int i = 0; i < points; ++i) xi[i] = -xi_max + i * h;
  auto hat = P.phase_integral_batch(xi);
  double acc = 0.0;
  for (int i = 0; i < points; ++i) {
    double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    acc += w * std::pow(1.0 + std::abs(xi[i].real()), 2.0 * s) * std::norm(hat[i]);
  }
  return std::sqrt(acc * h / (2.0 * std::numbers::pi));
}

std::vector<double> uniform_breaks(double a, double b, int n) {
  std::vector<double> br(n + 1);
  for (int i = 0; i <= n; ++i) br[i] = a + (b - a) * i / n;
  return br;
}

}  // namespace

double sobolev_norm(const DataHandle& u, double s, double xi_max, int points, double data_radius) {
  if (points < 2 || !(xi_max > 0.0)) throw DomainError("sobolev_norm: bad frequency grid");
  if (u.is_zero()) return 0.0;
  return norm_from_poly(u.to_poly(uniform_breaks(0.0, data_radius, 1024)), s, xi_max, points);
}

double data_norm(const ValidatedSpec& v) {
  const auto& sp = v.spec;
  double n = sobolev_norm(sp.u0, sp.s);
  for (int l = 0; l < v.j; ++l) {
    if (sp.g[l].is_zero()) continue;
    const double st = (sp.s + v.j - l) / sp.m;
    auto P = sp.g[l].kind() == DataHandle::Kind::sampled ? sp.g[l].to_poly({}) : sp.g[l].to_poly(uniform_breaks(0.0, sp.T, 64));
    n += norm_from_poly(P, st, 200.0, 4096);
  }
  return n;
}

}  // namespace utm
