#include "utm/linear_evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "utm/contour.hpp"
#include "utm/error.hpp"

namespace utm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kBlock = 2048;

cd ipow(cd z, int k) {
  cd r = 1.0;
  if (k >= 0)
    for (int q = 0; q < k; ++q) r *= z;
  else
    for (int q = 0; q < -k; ++q) r /= z;
  return r;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Gauss nodes on [0, R] with `panels` equal panels
void radial_rule(double R, int panels, int order, std::vector<double>& r, std::vector<double>& w) {
  const auto& g = gauss_legendre(order);
  const double h = R / panels;
  r.clear();
  w.clear();
  for (int k = 0; k < panels; ++k)
    for (int q = 0; q < order; ++q) {
      r.push_back(h * (k + 0.5 * (g.x[q] + 1.0)));
      w.push_back(0.5 * h * g.w[q]);
    }
}

// e^{i omega t_k} for all k
void time_phases(double omega, const std::vector<double>& t, std::vector<cd>& out) {
  out.resize(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = std::polar(1.0, omega * t[k]);
}

PiecewisePoly time_poly(const DataHandle& g, const std::vector<double>& times, const QuadratureConfig& q) {
  if (g.kind() == DataHandle::Kind::sampled) return g.to_poly({});
  return g.to_poly(time_breaks(times, q.time_subpanels));
}

// e^{i xi x_i} for a block of nodes, nx x B
Eigen::MatrixXcd phase_block(const std::vector<double>& x, const std::vector<cd>& xi, std::size_t start,
                             std::size_t count, bool uniform) {
  const std::size_t nx = x.size();
  Eigen::MatrixXcd E(nx, count);
  const cd I(0.0, 1.0);
  for (std::size_t b = 0; b < count; ++b) {
    const cd z = xi[start + b];
    if (uniform && nx > 2) {
      cd e = std::exp(I * z * x[0]);
      const cd step = std::exp(I * z * (x[1] - x[0]));
      for (std::size_t i = 0; i < nx; ++i) {
        E(i, b) = e;
        e *= step;
      }
    } else {
      for (std::size_t i = 0; i < nx; ++i) E(i, b) = std::exp(I * z * x[i]);
    }
  }
  return E;
}

bool uniform_axis(const std::vector<double>& v) {
  if (v.size() < 3) return true;
  const double h = v[1] - v[0];
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (std::abs((v[i + 1] - v[i]) - h) > 1e-12 * std::max(1.0, std::abs(h))) return false;
  return true;
}

}  // namespace

ContourNodes make_contour_nodes(int m, const QuadratureConfig& q) {
  q.validate();
  ContourNodes n;
  std::vector<double> r, w;
  radial_rule(q.contour_radius, q.contour_panels, q.gauss_order, r, w);
  const std::size_t R = r.size();
  // real line, symmetric
  for (std::size_t i = 0; i < R; ++i) {
    const std::size_t k = R - 1 - i;
    n.xi.push_back(cd(-r[k], 0.0));
    n.w.push_back(w[k] / kTwoPi);
    n.omega.push_back(std::pow(-r[k], m));
    n.sector.push_back(-1);
  }
  for (std::size_t k = 0; k < R; ++k) {
    n.xi.push_back(cd(r[k], 0.0));
    n.w.push_back(w[k] / kTwoPi);
    n.omega.push_back(std::pow(r[k], m));
    n.sector.push_back(-1);
  }
  n.line_count = n.xi.size();
  const int j = (m - 1) / 2;
  for (int p = 1; p <= j; ++p) {
    auto sb = sector_boundary(m, p);
    for (const Ray* ray : {&sb.right_ray, &sb.left_ray}) {
      const cd u = ray->angle.unit(), tan = ray->tangent();
      const double sign = (ray == &sb.right_ray) ? -1.0 : 1.0;
      for (std::size_t k = 0; k < R; ++k) {
        n.xi.push_back(r[k] * u);
        n.w.push_back(w[k] * tan);
        n.omega.push_back(sign * std::pow(r[k], m));
        n.sector.push_back(p);
      }
    }
  }
  return n;
}

LinearEvaluator::LinearEvaluator(const ValidatedSpec& spec, const UTMConstants& constants, const Grid& grid,
                                 const QuadratureConfig& q)
    : spec_(spec), c_(constants), grid_(grid), q_(q) {
  q_.validate();
  if (c_.m != spec_.spec.m) throw DomainError("constants were derived for a different m");
  if (grid_.x.empty() || grid_.t.empty()) throw DomainError("empty evaluation grid");
  for (std::size_t i = 0; i < grid_.x.size(); ++i) {
    if (grid_.x[i] < 0.0) throw DomainError("x grid must be nonnegative");
    if (i > 0 && !(grid_.x[i] > grid_.x[i - 1])) throw DomainError("x grid must increase");
  }
  for (std::size_t k = 0; k < grid_.t.size(); ++k) {
    if (grid_.t[k] < 0.0) throw DomainError("t grid must be nonnegative");
    if (k > 0 && !(grid_.t[k] > grid_.t[k - 1])) throw DomainError("t grid must increase");
  }
  const int m = spec_.spec.m, j = spec_.j;
  nodes_ = make_contour_nodes(m, q_);

  // rotated arguments; each must sit in the closed lower half-plane
  for (std::size_t i = 0; i < nodes_.line_count; ++i) zetas_.push_back(nodes_.xi[i]);
  rot_index_.assign((nodes_.size() - nodes_.line_count) * (j + 1), 0);
  for (std::size_t i = nodes_.line_count; i < nodes_.size(); ++i) {
    const int p = nodes_.sector[i];
    auto al = rotation_numbers(m, p);
    for (int n = 0; n <= j; ++n) {
      const cd z = al[n] * nodes_.xi[i];
      if (z.imag() > kImagSlack)
        throw NumericalError("rotated argument leaves the lower half-plane: m=" + std::to_string(m) +
                             " p=" + std::to_string(p) + " n=" + std::to_string(n + 1) +
                             " Im=" + std::to_string(z.imag()));
      rot_index_[(i - nodes_.line_count) * (j + 1) + n] = zetas_.size();
      zetas_.push_back(z);
    }
  }

  // asymptotic model of u0^ at large |xi|: sum_k b_k (i xi - kappa)^{-k}
  const auto& u0 = spec_.spec.u0;
  if (!u0.is_zero() && q_.model_terms > 0) {
    const int K = std::min(q_.model_terms, u0.max_derivative_order() + 1);
    const double kap = q_.model_shift;
    std::vector<double> a(K + 1, 0.0);
    model_coeff_.assign(K + 1, 0.0);
    for (int k = 1; k <= K; ++k) a[k] = u0.derivative(k - 1, 0.0);
    for (int n = 1; n <= K; ++n) {
      double b = a[n];
      for (int k = 1; k < n; ++k) b -= model_coeff_[k] * binom(n - 1, n - k) * std::pow(kap, n - k);
      model_coeff_[n] = b;
    }
  }

  for (const auto& e : compatibility_check(spec_, 1e-8))
    if (!e.satisfied)
      warnings_.push_back("compatibility residual " + std::to_string(e.residual) + " at order " + std::to_string(e.ell) +
                          (e.required ? " (required)" : " (not required at this s)"));

  gvals_.resize(j, grid_.t.size());
  for (int l = 0; l < j; ++l)
    for (std::size_t k = 0; k < grid_.t.size(); ++k) gvals_(l, k) = spec_.spec.g[l](grid_.t[k]);

  build_data_amplitude();
}

cd LinearEvaluator::model(cd xi) const {
  if (model_coeff_.empty()) return 0.0;
  const cd base = 1.0 / (cd(0.0, 1.0) * xi - q_.model_shift);
  cd pw = base, s = 0.0;
  for (std::size_t k = 1; k < model_coeff_.size(); ++k) {
    s += model_coeff_[k] * pw;
    pw *= base;
  }
  return s;
}

cd LinearEvaluator::pole_series(int p, int l, cd xi) const {
  const cd x0 = sector_boundary(spec_.spec.m, p).bisector();
  const int k = 1 + l;
  const cd d = 1.0 / (xi - x0);
  cd s = 0.0, x0q = 1.0;
  for (int q = 0; q < q_.pole_terms; ++q) {
    const double c = ((q % 2) ? -1.0 : 1.0) * binom(k + q - 1, q);
    s += c * x0q * ipow(d, k + q);
    x0q *= x0;
  }
  return s;
}

cd LinearEvaluator::pole_residue(int p, int l, double x) const {
  // integral over the positively oriented sector boundary of e^{i xi x} pole_series(xi), x -> 0+ at x = 0
  const cd x0 = sector_boundary(spec_.spec.m, p).bisector();
  const cd I(0.0, 1.0);
  const int k = 1 + l;
  const cd e = std::exp(I * x0 * x);
  cd s = 0.0, x0q = 1.0;
  for (int q = 0; q < q_.pole_terms; ++q) {
    const double c = ((q % 2) ? -1.0 : 1.0) * binom(k + q - 1, q);
    const int n = k + q;
    const cd term = (x == 0.0) ? (n == 1 ? cd(1.0) : cd(0.0)) : ipow(I * x, n - 1) / factorial(n - 1);
    s += c * x0q * term;
    x0q *= x0;
  }
  return kTwoPi * I * e * s;
}

void LinearEvaluator::build_data_amplitude() {
  const int m = spec_.spec.m, j = spec_.j;
  const std::size_t N = nodes_.size(), nt = grid_.t.size();
  const cd I(0.0, 1.0);
  phi_data_ = Eigen::MatrixXcd::Zero(N, nt);
  const auto& sp = spec_.spec;

  std::vector<cd> uhat;
  if (!sp.u0.is_zero()) {
    try {
      uhat = halfline_fourier_batch(sp.u0, zetas_, q_);
    } catch (const AccuracyError& e) {
      throw AccuracyError(std::string("initial-data term: ") + e.what());
    }
  }
  std::vector<cd> ph;
  for (std::size_t i = 0; i < N; ++i) {
    cd amp = 0.0;
    if (!uhat.empty()) {
      if (i < nodes_.line_count) {
        amp = uhat[i] - model(nodes_.xi[i]);
      } else {
        const int p = nodes_.sector[i];
        amp = model(nodes_.xi[i]) / kTwoPi;
        for (int n = 0; n <= j; ++n) amp += c_.C[p - 1][n] * uhat[rot_index_[(i - nodes_.line_count) * (j + 1) + n]];
      }
    }
    if (amp == 0.0) continue;
    time_phases(nodes_.omega[i], grid_.t, ph);
    for (std::size_t k = 0; k < nt; ++k) phi_data_(i, k) = nodes_.w[i] * amp * ph[k];
  }

  // boundary terms with their 1/xi^{1+l} tails replaced by an exactly integrable pole series
  std::vector<cd> cum(nt);
  for (int l = 0; l < j; ++l) {
    if (sp.g[l].is_zero()) continue;
    auto P = time_poly(sp.g[l], grid_.t, q_);
    const cd ipw = ipow(I, 2 * j - l - 1);
    for (std::size_t i = nodes_.line_count; i < N; ++i) {
      const int p = nodes_.sector[i];
      const cd xi = nodes_.xi[i];
      const double om = nodes_.omega[i];
      P.cumulative_phase_integral(om, grid_.t, cum.data());
      time_phases(om, grid_.t, ph);
      const cd pre = nodes_.w[i] * c_.Cprime[p - 1][l];
      const cd pw = ipow(I * xi, 2 * j - l);
      const cd S = ipw * pole_series(p, l, xi);
      for (std::size_t k = 0; k < nt; ++k) phi_data_(i, k) += pre * (pw * ph[k] * cum[k] + gvals_(l, k) * S);
    }
  }
  (void)m;
}

SolutionField LinearEvaluator::assemble(const Eigen::MatrixXcd& phi, bool with_boundary_residues) const {
  const std::size_t nx = grid_.x.size(), nt = grid_.t.size(), N = nodes_.size();
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(nx, nt);
  const bool uni = uniform_axis(grid_.x);
  for (std::size_t s = 0; s < N; s += kBlock) {
    const std::size_t B = std::min(kBlock, N - s);
    if (phi.middleRows(s, B).squaredNorm() == 0.0) continue;
    auto E = phase_block(grid_.x, nodes_.xi, s, B, uni);
    U.noalias() += E * phi.middleRows(s, B);
  }
  if (with_boundary_residues) {
    const int j = spec_.j;
    const cd I(0.0, 1.0);
    for (int l = 0; l < j; ++l) {
      if (spec_.spec.g[l].is_zero()) continue;
      const cd ipw = ipow(I, 2 * j - l - 1);
      for (int p = 1; p <= j; ++p) {
        const cd cp = c_.Cprime[p - 1][l] * ipw;
        for (std::size_t i = 0; i < nx; ++i) {
          const cd res = cp * pole_residue(p, l, grid_.x[i]);
          for (std::size_t k = 0; k < nt; ++k) U(i, k) -= res * gvals_(l, k);
        }
      }
    }
  }
  SolutionField f(grid_, Provenance::utm_linear);
  f.quad = q_;
  for (std::size_t k = 0; k < nt; ++k)
    for (std::size_t i = 0; i < nx; ++i) f.at(i, k) = U(i, k);
  return f;
}

Eigen::MatrixXcd LinearEvaluator::forcing_amplitude(const ForcingHandle& f) const {
  const int j = spec_.j;
  const std::size_t N = nodes_.size(), nt = grid_.t.size(), Z = zetas_.size();
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(N, nt);
  if (f.is_zero()) return phi;

  // omega of every zeta: zeta^m equals xi^m of its base node
  std::vector<double> zom(Z);
  for (std::size_t i = 0; i < nodes_.line_count; ++i) zom[i] = nodes_.omega[i];
  for (std::size_t i = nodes_.line_count; i < N; ++i)
    for (int n = 0; n <= j; ++n) zom[rot_index_[(i - nodes_.line_count) * (j + 1) + n]] = nodes_.omega[i];

  // Fz(z, k) = e^{i omega t_k} F(zeta_z, t_k)
  Eigen::MatrixXcd Fz(Z, nt);
  std::vector<cd> cum(nt), ph;
  if (f.kind() == ForcingHandle::Kind::separable) {
    std::vector<cd> ahat;
    try {
      ahat = halfline_fourier_batch(f.space(), zetas_, q_);
    } catch (const AccuracyError& e) {
      throw AccuracyError(std::string("forcing term: ") + e.what());
    }
    auto P = time_poly(f.time(), grid_.t, q_);
    for (std::size_t z = 0; z < Z; ++z) {
      P.cumulative_phase_integral(zom[z], grid_.t, cum.data());
      time_phases(zom[z], grid_.t, ph);
      for (std::size_t k = 0; k < nt; ++k) Fz(z, k) = ahat[z] * cum[k] * ph[k];
    }
  } else if (f.kind() == ForcingHandle::Kind::sampled) {
    const auto& gx = f.grid_x();
    const auto& gt = f.grid_t();
    HermiteGrid hx(gx), ht(gt);
    std::vector<std::size_t> tix(nt);
    for (std::size_t k = 0; k < nt; ++k) {
      auto it = std::lower_bound(gt.begin(), gt.end(), grid_.t[k] - 1e-12 * std::max(1.0, grid_.t[k]));
      if (it == gt.end() || std::abs(*it - grid_.t[k]) > 1e-12 * std::max(1.0, grid_.t[k]))
        throw DomainError("sampled forcing must contain every evaluation time among its samples");
      tix[k] = static_cast<std::size_t>(it - gt.begin());
    }
    if (std::abs(gt.front()) > 1e-14) throw DomainError("sampled forcing must start at tau = 0");
    const std::size_t nxf = gx.size(), ntf = gt.size();
    Eigen::MatrixXcd Fs(nxf, ntf);
    for (std::size_t k = 0; k < ntf; ++k)
      for (std::size_t i = 0; i < nxf; ++i) Fs(i, k) = f.values()[k * nxf + i];
    Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> W;
    std::vector<cd> row(ntf), cf(ntf);
    for (std::size_t s = 0; s < Z; s += kBlock) {
      const std::size_t B = std::min(kBlock, Z - s);
      W.resize(B, nxf);
      for (std::size_t b = 0; b < B; ++b) hx.phase_weights(zetas_[s + b], W.row(b).data());
      Eigen::MatrixXcd fh = W * Fs;  // B x ntf
      for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t k = 0; k < ntf; ++k) row[k] = fh(b, k);
        ht.cumulative(zom[s + b], row.data(), cf.data());
        time_phases(zom[s + b], grid_.t, ph);
        for (std::size_t k = 0; k < nt; ++k) Fz(s + b, k) = cf[tix[k]] * ph[k];
      }
    }
  } else {
    throw DomainError("the contour evaluator needs separable or sampled forcing");
  }

  for (std::size_t i = 0; i < N; ++i) {
    if (i < nodes_.line_count) {
      phi.row(i) = nodes_.w[i] * Fz.row(i);
    } else {
      const int p = nodes_.sector[i];
      for (int n = 0; n <= j; ++n)
        phi.row(i) += (nodes_.w[i] * c_.C[p - 1][n]) * Fz.row(rot_index_[(i - nodes_.line_count) * (j + 1) + n]);
    }
  }
  return phi;
}

SolutionField LinearEvaluator::data_response() const { return assemble(phi_data_, true); }

SolutionField LinearEvaluator::forcing_response(const ForcingHandle& f) const {
  auto phi = forcing_amplitude(f);
  auto out = assemble(phi, false);
  return out;
}

SolutionField LinearEvaluator::evaluate() const {
  if (spec_.spec.f.is_zero()) return data_response();
  Eigen::MatrixXcd phi = phi_data_ + forcing_amplitude(spec_.spec.f);
  return assemble(phi, true);
}

cd LinearEvaluator::ray_integral(const RayTerm& term, int p, double x, double t) const {
  const int m = spec_.spec.m, j = spec_.j;
  if (p < 1 || p > j) throw DomainError("ray_integral: sector index out of range");
  if (x < 0.0) throw DomainError("ray_integral: x must be nonnegative");
  const cd I(0.0, 1.0);
  const auto& sp = spec_.spec;
  auto al = rotation_numbers(m, p);
  std::vector<std::size_t> idx;
  for (std::size_t i = nodes_.line_count; i < nodes_.size(); ++i)
    if (nodes_.sector[i] == p) idx.push_back(i);

  std::vector<cd> amp(idx.size(), 0.0);
  cd extra = 0.0;
  switch (term.kind) {
    case RayTerm::Kind::initial:
    case RayTerm::Kind::forcing: {
      if (term.index < 1 || term.index > j + 1) throw DomainError("ray_integral: rotation index out of range");
      const cd al_n = al[term.index - 1];
      std::vector<cd> z;
      for (auto i : idx) z.push_back(al_n * nodes_.xi[i]);
      std::vector<cd> val(z.size(), 0.0);
      if (term.kind == RayTerm::Kind::initial) {
        if (!sp.u0.is_zero()) val = halfline_fourier_batch(sp.u0, z, q_);
      } else if (sp.f.kind() == ForcingHandle::Kind::separable) {
        auto a = halfline_fourier_batch(sp.f.space(), z, q_);
        auto P = time_poly(sp.f.time(), {t}, q_);
        for (std::size_t r = 0; r < z.size(); ++r) val[r] = a[r] * P.phase_integral(nodes_.omega[idx[r]], 0.0, t);
      } else if (!sp.f.is_zero()) {
        throw DomainError("ray_integral: forcing terms need separable forcing");
      }
      for (std::size_t r = 0; r < idx.size(); ++r)
        amp[r] = c_.C[p - 1][term.index - 1] * val[r] * std::polar(1.0, nodes_.omega[idx[r]] * t);
      break;
    }
    case RayTerm::Kind::model:
      for (std::size_t r = 0; r < idx.size(); ++r)
        amp[r] = model(nodes_.xi[idx[r]]) / kTwoPi * std::polar(1.0, nodes_.omega[idx[r]] * t);
      break;
    case RayTerm::Kind::boundary: {
      const int l = term.index;
      if (l < 0 || l >= j) throw DomainError("ray_integral: boundary index out of range");
      if (sp.g[l].is_zero()) break;
      auto P = time_poly(sp.g[l], {t}, q_);
      const double gt = sp.g[l](t);
      const cd ipw = ipow(I, 2 * j - l - 1);
      for (std::size_t r = 0; r < idx.size(); ++r) {
        const cd xi = nodes_.xi[idx[r]];
        const double om = nodes_.omega[idx[r]];
        const cd h = std::polar(1.0, om * t) * P.phase_integral(om, 0.0, t);
        amp[r] = c_.Cprime[p - 1][l] * (ipow(I * xi, 2 * j - l) * h + gt * ipw * pole_series(p, l, xi));
      }
      extra = -c_.Cprime[p - 1][l] * ipw * gt * pole_residue(p, l, x);
      break;
    }
  }
  cd s = 0.0;
  for (std::size_t r = 0; r < idx.size(); ++r) s += nodes_.w[idx[r]] * std::exp(I * nodes_.xi[idx[r]] * x) * amp[r];
  return s + extra;
}

SolutionField evaluate_linear(const ValidatedSpec& spec, const UTMConstants& constants, const Grid& grid,
                              const QuadratureConfig& q) {
  return LinearEvaluator(spec, constants, grid, q).evaluate();
}

namespace {

std::vector<cd> wholeline_hat(const DataHandle& U0, const ContourNodes& n, const QuadratureConfig& q) {
  std::vector<cd> xi(n.xi.begin(), n.xi.begin() + n.line_count);
  if (U0.is_zero()) return std::vector<cd>(xi.size(), 0.0);
  PiecewisePoly P;
  if (U0.kind() == DataHandle::Kind::sampled) {
    P = U0.to_poly({});
  } else {
    const double X = q.truncation_radius;
    std::vector<double> br(2 * q.panels + 1);
    for (int i = 0; i <= 2 * q.panels; ++i) br[i] = -X + X * i / q.panels;
    P = U0.to_poly(br);
    const double tail = std::max(std::abs(U0(X)), std::abs(U0(-X)));
    if (tail > q.rel_tol * std::max(P.max_abs(), 1e-300))
      throw AccuracyError("whole-line data do not decay within truncation_radius");
  }
  return P.phase_integral_batch(xi);
}

}  // namespace

SolutionField wholeline_oracle(const DataHandle& U0, int m, const Grid& grid, const QuadratureConfig& q) {
  auto n = make_contour_nodes(m, q);
  auto hat = wholeline_hat(U0, n, q);
  const std::size_t L = n.line_count, nt = grid.t.size();
  Eigen::MatrixXcd phi(L, nt);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t k = 0; k < nt; ++k) phi(i, k) = n.w[i] * hat[i] * std::polar(1.0, n.omega[i] * grid.t[k]);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(grid.x.size(), nt);
  const bool uni = uniform_axis(grid.x);
  for (std::size_t s = 0; s < L; s += kBlock) {
    const std::size_t B = std::min(kBlock, L - s);
    U.noalias() += phase_block(grid.x, n.xi, s, B, uni) * phi.middleRows(s, B);
  }
  SolutionField f(grid, Provenance::wholeline_oracle);
  f.quad = q;
  for (std::size_t k = 0; k < nt; ++k)
    for (std::size_t i = 0; i < grid.x.size(); ++i) f.at(i, k) = U(i, k);
  return f;
}

std::vector<double> wholeline_traces(const DataHandle& U0, int m, int l, const std::vector<double>& times,
                                     const QuadratureConfig& q) {
  auto n = make_contour_nodes(m, q);
  auto hat = wholeline_hat(U0, n, q);
  const cd I(0.0, 1.0);
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t k = 0; k < times.size(); ++k) {
    cd s = 0.0;
    for (std::size_t i = 0; i < n.line_count; ++i)
      s += n.w[i] * ipow(I * n.xi[i], l) * hat[i] * std::polar(1.0, n.omega[i] * times[k]);
    out[k] = s.real();
  }
  return out;
}

}  // namespace utm
