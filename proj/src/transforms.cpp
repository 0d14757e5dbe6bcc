#include "utm/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "utm/error.hpp"

namespace utm {

void QuadratureConfig::validate() const {
  if (!(truncation_radius > 0.0)) throw ConfigError("truncation_radius must be positive");
  if (panels < 16) throw ConfigError("panels must be at least 16");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw ConfigError("rel_tol must lie in (0, 1e-2]");
  if (time_subpanels < 1) throw ConfigError("time_subpanels must be positive");
  if (!(contour_radius > 0.0)) throw ConfigError("contour_radius must be positive");
  if (contour_panels < 16) throw ConfigError("contour_panels must be at least 16");
  if (gauss_order < 1 || gauss_order > 32) throw ConfigError("gauss_order must lie in 1..32");
  if (pole_terms < 1 || pole_terms > 12) throw ConfigError("pole_terms must lie in 1..12");
  if (!(model_shift > 0.0)) throw ConfigError("model_shift must be positive");
  if (model_terms < 0 || model_terms > 16) throw ConfigError("model_terms must lie in 0..16");
}

namespace {

std::vector<double> uniform(double a, double b, int n) {
  std::vector<double> br(n + 1);
  for (int i = 0; i <= n; ++i) br[i] = a + (b - a) * i / n;
  br[n] = b;
  return br;
}

void check_zeta(cd zeta) {
  if (zeta.imag() > kImagSlack)
    throw DomainError("half-line transform needs Im(zeta) <= 0, got " + std::to_string(zeta.imag()));
}

double tail_value(const DataHandle& u, double X) {
  double t = 0.0;
  for (int k = 0; k <= 8; ++k) t = std::max(t, std::abs(u(X * (0.9 + 0.0125 * k))));
  return t;
}

// composite trapezoid with n points on [a, b]
template <class F>
cd trapezoid(F&& f, double a, double b, int n) {
  const double h = (b - a) / (n - 1);
  cd s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n - 1; ++i) s += f(a + i * h);
  return s * h;
}

bool use_dense(const QuadratureConfig& q, cd omega, double len) {
  return q.oscillatory_rule == OscillatoryRule::dense_trapezoid &&
         std::abs(omega.real()) * len <= 2.0 * std::numbers::pi * q.panels;
}

}  // namespace

PiecewisePoly halfline_poly(const DataHandle& u, const QuadratureConfig& q) {
  return u.to_poly(uniform(0.0, q.truncation_radius, q.panels));
}

std::vector<double> time_breaks(const std::vector<double>& times, int sub) {
  std::vector<double> t = times;
  t.push_back(0.0);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (t.size() < 2) t.push_back(1e-12);
  std::vector<double> br;
  for (std::size_t k = 0; k + 1 < t.size(); ++k)
    for (int s = 0; s < sub; ++s) br.push_back(t[k] + (t[k + 1] - t[k]) * s / sub);
  br.push_back(t.back());
  return br;
}

cd halfline_fourier(const DataHandle& u, cd zeta, const QuadratureConfig& q) {
  check_zeta(zeta);
  if (u.is_zero()) return 0.0;
  const double X = u.kind() == DataHandle::Kind::sampled ? u.sample_x().back() : q.truncation_radius;
  cd val;
  if (use_dense(q, zeta, X)) {
    const cd I(0.0, 1.0);
    val = trapezoid([&](double x) { return std::exp(-I * zeta * x) * u(x); }, 0.0, X, 8 * q.panels + 1);
  } else if (u.kind() == DataHandle::Kind::sampled) {
    val = u.to_poly({}).phase_integral(zeta, 0.0, X);
  } else {
    val = halfline_poly(u, q).phase_integral(zeta, 0.0, X);
  }
  if (u.kind() == DataHandle::Kind::builtin) {
    const double tail = tail_value(u, X) * std::exp(zeta.imag() * X);
    if (tail > q.rel_tol * std::max(std::abs(val), 1e-300))
      throw AccuracyError("half-line transform: data do not decay within truncation_radius (tail " +
                          std::to_string(tail) + ")");
  }
  return val;
}

std::vector<cd> halfline_fourier_batch(const DataHandle& u, const std::vector<cd>& zetas, const QuadratureConfig& q) {
  for (cd z : zetas) check_zeta(z);
  if (u.is_zero()) return std::vector<cd>(zetas.size(), 0.0);
  if (u.kind() == DataHandle::Kind::sampled) return u.to_poly({}).phase_integral_batch(zetas);
  auto P = halfline_poly(u, q);
  const double tail = tail_value(u, q.truncation_radius);
  if (tail > q.rel_tol * std::max(P.max_abs(), 1e-300))
    throw AccuracyError("half-line transform: data do not decay within truncation_radius (tail " +
                        std::to_string(tail) + ")");
  return P.phase_integral_batch(zetas);
}

cd temporal_transform(const DataHandle& g, cd omega, double t, const QuadratureConfig& q) {
  if (t < 0.0) throw DomainError("temporal_transform: t must be nonnegative");
  if (t == 0.0 || g.is_zero()) return 0.0;
  if (use_dense(q, omega, t)) {
    const cd I(0.0, 1.0);
    return trapezoid([&](double s) { return std::exp(-I * omega * s) * g(s); }, 0.0, t, 8 * q.panels + 1);
  }
  if (g.kind() == DataHandle::Kind::sampled) return g.to_poly({}).phase_integral(omega, 0.0, t);
  const int n = std::max(16, static_cast<int>(std::ceil(q.panels * t)));
  return g.to_poly(uniform(0.0, t, n)).phase_integral(omega, 0.0, t);
}

cd forcing_transform(const ForcingHandle& f, cd zeta, double t, int m, const QuadratureConfig& q) {
  check_zeta(zeta);
  if (t < 0.0) throw DomainError("forcing_transform: t must be nonnegative");
  if (f.is_zero() || t == 0.0) return 0.0;
  cd omega = std::pow(zeta, m);
  // temporal pieces; on each, the slice transform is sampled at Chebyshev nodes
  // and fitted (real and imaginary parts separately)
  const int pieces = std::max(16, static_cast<int>(std::ceil(q.panels * t / 8.0)));
  auto br = uniform(0.0, t, pieces);
  auto slice = [&](double tau) -> cd {
    if (f.kind() == ForcingHandle::Kind::separable) return halfline_fourier(f.space(), zeta, q) * f.time()(tau);
    if (f.kind() == ForcingHandle::Kind::sampled) {
      const auto& gx = f.grid_x();
      std::vector<double> v(gx.size());
      for (std::size_t i = 0; i < gx.size(); ++i) v[i] = f(gx[i], tau);
      return PiecewisePoly::hermite(gx, v).phase_integral(zeta, gx.front(), gx.back());
    }
    auto P = PiecewisePoly::fit([&](double x) { return f(x, tau); }, uniform(0.0, q.truncation_radius, q.panels), 7);
    return P.phase_integral(zeta, 0.0, q.truncation_radius);
  };
  // fit slice values in tau with degree-7 pieces; cache node values
  std::vector<double> nodes;
  std::vector<cd> vals;
  auto re = PiecewisePoly::fit(
      [&](double tau) {
        cd v = slice(tau);
        nodes.push_back(tau);
        vals.push_back(v);
        return v.real();
      },
      br, 7);
  std::size_t idx = 0;
  auto im = PiecewisePoly::fit([&](double) { return vals[idx++].imag(); }, br, 7);
  return re.phase_integral(omega, 0.0, t) + cd(0.0, 1.0) * im.phase_integral(omega, 0.0, t);
}

}  // namespace utm
