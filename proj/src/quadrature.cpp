#include "utm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace utm {

namespace {

constexpr double kSeriesKappa = 5.0;

GaussRule make_gauss(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = z;
        p0 = 1.0;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
    r.x[n - 1 - i] = z;
    r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n == 1) {
    r.x[0] = 0.0;
    r.w[0] = 2.0;
  }
  return r;
}

// q(z) = p(c0 + c1 z)
void shift_scale(const double* p, int deg, double c0, double c1, double* q) {
  std::vector<double> tmp(p, p + deg + 1);
  // Taylor shift by c0 (synthetic division)
  for (int i = 0; i < deg; ++i)
    for (int k = deg - 1; k >= i; --k) tmp[k] += c0 * tmp[k + 1];
  double s = 1.0;
  for (int k = 0; k <= deg; ++k) {
    q[k] = tmp[k] * s;
    s *= c1;
  }
}

double poly_deriv(const double* c, int deg, int order, double y) {
  double acc = 0.0;
  for (int k = deg; k >= order; --k) {
    double f = 1.0;
    for (int q = 0; q < order; ++q) f *= (k - q);
    acc = acc * y + f * c[k];
  }
  return acc;
}

// mu_k = integral_{-1}^{1} y^k e^{-i kappa y} dy, small |kappa| series.
void series_moments(cd kappa, int n, cd* mu) {
  for (int k = 0; k < n; ++k) mu[k] = 0.0;
  cd term = 1.0;
  const cd a(0.0, -1.0);
  for (int q = 0; q < 48; ++q) {
    bool tiny = std::abs(term) < 1e-18;
    for (int k = 0; k < n; ++k) {
      int p = k + q;
      if (p % 2 == 0) mu[k] += term * (2.0 / (p + 1));
    }
    if (tiny && q > 4) break;
    term *= a * kappa / double(q + 1);
  }
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss(n)).first;
  return it->second;
}

std::vector<double> fd_weights(double z, const std::vector<double>& xs, int order) {
  const int n = static_cast<int>(xs.size());
  if (n <= order) throw std::invalid_argument("fd_weights: too few nodes");
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0, c4 = xs[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, order);
    double c2 = 1.0, c5 = c4;
    c4 = xs[i] - z;
    for (int jj = 0; jj < i; ++jj) {
      double c3 = xs[i] - xs[jj];
      c2 *= c3;
      if (jj == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[jj][k] = (c4 * c[jj][k] - k * c[jj][k - 1]) / c3;
      c[jj][0] = c4 * c[jj][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

cd local_phase_integral(const double* c, int deg, cd kappa, cd ea, cd eb, cd emid) {
  if (std::abs(kappa) < kSeriesKappa) {
    cd mu[16];
    series_moments(kappa, deg + 1, mu);
    cd s = 0.0;
    for (int k = 0; k <= deg; ++k) s += c[k] * mu[k];
    return emid * s;
  }
  const cd inv = 1.0 / (cd(0.0, 1.0) * kappa);
  cd pw = inv, s = 0.0;
  for (int k = 0; k <= deg; ++k) {
    double dm = poly_deriv(c, deg, k, -1.0);
    double dp = poly_deriv(c, deg, k, 1.0);
    s += (dm * ea - dp * eb) * pw;
    pw *= inv;
  }
  return s;
}

PiecewisePoly PiecewisePoly::fit(const std::function<double(double)>& f, std::vector<double> breaks,
                                 int degree) {
  if (breaks.size() < 2) throw std::invalid_argument("PiecewisePoly::fit: need two breaks");
  if (degree < 0 || degree > 15) throw std::invalid_argument("PiecewisePoly::fit: bad degree");
  PiecewisePoly P;
  P.breaks_ = std::move(breaks);
  P.deg_ = degree;
  const int n = degree + 1;
  const int K = P.pieces();
  P.coef_.assign(static_cast<std::size_t>(K) * n, 0.0);

  // Chebyshev polynomials in monomial form
  std::vector<std::vector<double>> T(n, std::vector<double>(n, 0.0));
  T[0][0] = 1.0;
  if (n > 1) T[1][1] = 1.0;
  for (int k = 2; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      double v = -T[k - 2][i];
      if (i > 0) v += 2.0 * T[k - 1][i - 1];
      T[k][i] = v;
    }
  std::vector<double> nodes(n), fv(n), a(n);
  for (int i = 0; i < n; ++i) nodes[i] = std::cos(std::numbers::pi * (2 * i + 1) / (2.0 * n));

  for (int k = 0; k < K; ++k) {
    const double lo = P.breaks_[k], hi = P.breaks_[k + 1];
    if (!(hi > lo)) throw std::invalid_argument("PiecewisePoly::fit: breaks must increase");
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) fv[i] = f(mid + half * nodes[i]);
    for (int q = 0; q < n; ++q) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += fv[i] * std::cos(q * std::numbers::pi * (2 * i + 1) / (2.0 * n));
      a[q] = s * 2.0 / n;
    }
    a[0] *= 0.5;
    double* c = P.coef_.data() + static_cast<std::size_t>(k) * n;
    for (int q = 0; q < n; ++q)
      for (int i = 0; i < n; ++i) c[i] += a[q] * T[q][i];
  }
  const double h0 = P.breaks_[1] - P.breaks_[0];
  P.uniform_ = true;
  for (int k = 0; k < K; ++k)
    if (std::abs((P.breaks_[k + 1] - P.breaks_[k]) - h0) > 1e-12 * std::max(1.0, std::abs(h0)))
      P.uniform_ = false;
  return P;
}

PiecewisePoly PiecewisePoly::hermite(const std::vector<double>& x, const std::vector<double>& v) {
  const int n = static_cast<int>(x.size());
  if (n < 2 || v.size() != x.size())
    throw std::invalid_argument("PiecewisePoly::hermite: need matching abscissae and values (n >= 2)");
  for (int i = 0; i + 1 < n; ++i)
    if (!(x[i + 1] > x[i])) throw std::invalid_argument("PiecewisePoly::hermite: abscissae must increase");
  HermiteGrid hg(x);
  std::vector<double> slope(n, 0.0);
  hg.slopes(v.data(), slope.data());
  PiecewisePoly P;
  P.breaks_ = x;
  P.deg_ = 3;
  P.coef_.assign(static_cast<std::size_t>(n - 1) * 4, 0.0);
  for (int k = 0; k + 1 < n; ++k) {
    const double h = x[k + 1] - x[k];
    const double f0 = v[k], f1 = v[k + 1], m0 = h * slope[k], m1 = h * slope[k + 1];
    // monomial in t in [0,1]
    double pt[4] = {f0, m0, -3 * f0 - 2 * m0 + 3 * f1 - m1, 2 * f0 + m0 - 2 * f1 + m1};
    shift_scale(pt, 3, 0.5, 0.5, P.coef_.data() + static_cast<std::size_t>(k) * 4);
  }
  const double h0 = x[1] - x[0];
  P.uniform_ = true;
  for (int k = 0; k + 1 < n; ++k)
    if (std::abs((x[k + 1] - x[k]) - h0) > 1e-12 * std::max(1.0, std::abs(h0))) P.uniform_ = false;
  return P;
}

int PiecewisePoly::locate(double s) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  int k = static_cast<int>(it - breaks_.begin()) - 1;
  return std::clamp(k, 0, pieces() - 1);
}

double PiecewisePoly::operator()(double s) const { return derivative(0, s); }

double PiecewisePoly::derivative(int order, double s) const {
  if (empty() || s < lo() || s > hi()) return 0.0;
  const int k = locate(s);
  const double a = breaks_[k], b = breaks_[k + 1];
  const double half = 0.5 * (b - a);
  const double y = (s - 0.5 * (a + b)) / half;
  return poly_deriv(coeffs(k), deg_, order, y) / std::pow(half, order);
}

double PiecewisePoly::max_abs() const {
  double m = 0.0;
  for (int k = 0; k < pieces(); ++k)
    for (double y : {-1.0, 0.0, 1.0}) m = std::max(m, std::abs(poly_deriv(coeffs(k), deg_, 0, y)));
  return m;
}

cd PiecewisePoly::piece_integral(int k, cd omega, double ya, double yb) const {
  const double a = breaks_[k], b = breaks_[k + 1];
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  const cd I(0.0, 1.0);
  if (ya == -1.0 && yb == 1.0) {
    cd kappa = omega * half;
    return half * local_phase_integral(coeffs(k), deg_, kappa, std::exp(-I * omega * a),
                                       std::exp(-I * omega * b), std::exp(-I * omega * mid));
  }
  double q[16];
  const double c0 = 0.5 * (ya + yb), c1 = 0.5 * (yb - ya);
  shift_scale(coeffs(k), deg_, c0, c1, q);
  const double sa = mid + half * ya, sb = mid + half * yb, sm = mid + half * c0;
  const double h2 = half * c1;
  cd kappa = omega * h2;
  return h2 * local_phase_integral(q, deg_, kappa, std::exp(-I * omega * sa), std::exp(-I * omega * sb),
                                   std::exp(-I * omega * sm));
}

cd PiecewisePoly::phase_integral(cd omega, double a, double b) const {
  if (empty()) return 0.0;
  a = std::max(a, lo());
  b = std::min(b, hi());
  if (!(b > a)) return 0.0;
  const int ka = locate(a), kb = locate(b);
  cd s = 0.0;
  for (int k = ka; k <= kb; ++k) {
    const double pa = breaks_[k], pb = breaks_[k + 1];
    const double lo_ = std::max(a, pa), hi_ = std::min(b, pb);
    if (!(hi_ > lo_)) continue;
    const double mid = 0.5 * (pa + pb), half = 0.5 * (pb - pa);
    double ya = (lo_ == pa) ? -1.0 : (lo_ - mid) / half;
    double yb = (hi_ == pb) ? 1.0 : (hi_ - mid) / half;
    s += piece_integral(k, omega, ya, yb);
  }
  return s;
}

void PiecewisePoly::cumulative_phase_integral(cd omega, const std::vector<double>& ts, cd* out) const {
  cd acc = 0.0;
  double cur = empty() ? 0.0 : lo();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0 && ts[i] < ts[i - 1]) throw std::invalid_argument("cumulative_phase_integral: times must increase");
    if (ts[i] > cur) {
      acc += phase_integral(omega, cur, ts[i]);
      cur = ts[i];
    }
    out[i] = acc;
  }
}

std::vector<cd> PiecewisePoly::phase_integral_batch(const std::vector<cd>& omegas) const {
  std::vector<cd> out(omegas.size(), 0.0);
  if (empty()) return out;
  if (!uniform_) {
    for (std::size_t i = 0; i < omegas.size(); ++i) out[i] = phase_integral(omegas[i], lo(), hi());
    return out;
  }
  const int K = pieces(), n = deg_ + 1;
  const double h = breaks_[1] - breaks_[0], half = 0.5 * h;
  // endpoint derivatives, shared by all omegas
  std::vector<double> dm(static_cast<std::size_t>(K) * n), dp(static_cast<std::size_t>(K) * n);
  for (int k = 0; k < K; ++k)
    for (int q = 0; q < n; ++q) {
      dm[k * n + q] = poly_deriv(coeffs(k), deg_, q, -1.0);
      dp[k * n + q] = poly_deriv(coeffs(k), deg_, q, 1.0);
    }
  const cd I(0.0, 1.0);
  cd mu[16], pw[16];
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const cd w = omegas[i];
    const cd kappa = w * half;
    const cd step = std::exp(-I * w * h);
    cd s = 0.0;
    if (std::abs(kappa) < kSeriesKappa) {
      series_moments(kappa, n, mu);
      cd e = std::exp(-I * w * (lo() + half));
      for (int k = 0; k < K; ++k) {
        const double* c = coeffs(k);
        cd t = 0.0;
        for (int q = 0; q < n; ++q) t += c[q] * mu[q];
        s += e * t;
        e *= step;
      }
    } else {
      const cd inv = 1.0 / (I * kappa);
      pw[0] = inv;
      for (int q = 1; q < n; ++q) pw[q] = pw[q - 1] * inv;
      cd ea = std::exp(-I * w * lo());
      for (int k = 0; k < K; ++k) {
        const cd eb = ea * step;
        cd t = 0.0;
        for (int q = 0; q < n; ++q) t += (dm[k * n + q] * ea - dp[k * n + q] * eb) * pw[q];
        s += t;
        ea = eb;
      }
    }
    out[i] = half * s;
  }
  return out;
}

namespace {

// Hermite basis on t in [0,1] mapped to y in [-1,1], monomial in y
struct HermiteBasisTable {
  double c[4][4];
  double dm[4][4];  // derivatives at y=-1
  double dp[4][4];  // derivatives at y=+1
  HermiteBasisTable() {
    const double pt[4][4] = {{1, 0, -3, 2}, {0, 1, -2, 1}, {0, 0, 3, -2}, {0, 0, -1, 1}};
    for (int b = 0; b < 4; ++b) {
      shift_scale(pt[b], 3, 0.5, 0.5, c[b]);
      for (int q = 0; q < 4; ++q) {
        dm[b][q] = poly_deriv(c[b], 3, q, -1.0);
        dp[b][q] = poly_deriv(c[b], 3, q, 1.0);
      }
    }
  }
};

const HermiteBasisTable& hermite_table() {
  static const HermiteBasisTable t;
  return t;
}

}  // namespace

HermiteGrid::HermiteGrid(std::vector<double> x) : x_(std::move(x)) {
  const int n = size();
  if (n < 2) throw std::invalid_argument("HermiteGrid: need at least two abscissae");
  for (int i = 0; i + 1 < n; ++i)
    if (!(x_[i + 1] > x_[i])) throw std::invalid_argument("HermiteGrid: abscissae must increase");
  width_ = std::min(n, 5);
  start_.resize(n);
  wt_.resize(static_cast<std::size_t>(n) * width_);
  for (int i = 0; i < n; ++i) {
    const int s = std::clamp(i - width_ / 2, 0, n - width_);
    std::vector<double> xs(x_.begin() + s, x_.begin() + s + width_);
    auto w = fd_weights(x_[i], xs, 1);
    start_[i] = s;
    for (int q = 0; q < width_; ++q) wt_[static_cast<std::size_t>(i) * width_ + q] = w[q];
  }
}

void HermiteGrid::piece_basis(int k, cd omega, cd out[4]) const {
  const auto& T = hermite_table();
  const double a = x_[k], b = x_[k + 1], half = 0.5 * (b - a), mid = 0.5 * (a + b);
  const cd I(0.0, 1.0);
  const cd kappa = omega * half;
  if (std::abs(kappa) < kSeriesKappa) {
    cd mu[4];
    series_moments(kappa, 4, mu);
    const cd em = std::exp(-I * omega * mid) * half;
    for (int q = 0; q < 4; ++q) {
      cd s = 0.0;
      for (int r = 0; r < 4; ++r) s += T.c[q][r] * mu[r];
      out[q] = em * s;
    }
    return;
  }
  const cd ea = std::exp(-I * omega * a), eb = std::exp(-I * omega * b);
  const cd inv = 1.0 / (I * kappa);
  cd pw[4];
  pw[0] = inv;
  for (int r = 1; r < 4; ++r) pw[r] = pw[r - 1] * inv;
  for (int q = 0; q < 4; ++q) {
    cd s = 0.0;
    for (int r = 0; r < 4; ++r) s += (T.dm[q][r] * ea - T.dp[q][r] * eb) * pw[r];
    out[q] = half * s;
  }
}

void HermiteGrid::phase_weights(cd omega, cd* w) const {
  const int n = size();
  std::vector<cd> q(n, 0.0);
  for (int i = 0; i < n; ++i) w[i] = 0.0;
  cd B[4];
  for (int k = 0; k + 1 < n; ++k) {
    piece_basis(k, omega, B);
    const double h = x_[k + 1] - x_[k];
    w[k] += B[0];
    w[k + 1] += B[2];
    q[k] += h * B[1];
    q[k + 1] += h * B[3];
  }
  // w += D^T q
  for (int i = 0; i < n; ++i) {
    const int st = start_[i];
    for (int r = 0; r < width_; ++r) w[st + r] += wt_[static_cast<std::size_t>(i) * width_ + r] * q[i];
  }
}

void HermiteGrid::cumulative(cd omega, const cd* v, cd* out) const {
  const int n = size();
  std::vector<cd> s(n);
  slopes(v, s.data());
  cd B[4], acc = 0.0;
  out[0] = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    piece_basis(k, omega, B);
    const double h = x_[k + 1] - x_[k];
    acc += B[0] * v[k] + B[1] * h * s[k] + B[2] * v[k + 1] + B[3] * h * s[k + 1];
    out[k + 1] = acc;
  }
}

}  // namespace utm
