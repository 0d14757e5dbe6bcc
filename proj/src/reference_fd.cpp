#include "utm/reference_fd.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "utm/error.hpp"
#include "utm/quadrature.hpp"

namespace utm {

void FDConfig::validate(int m) const {
  if (!(L > 0)) throw ConfigError("fd: L must be positive");
  if (Nx < 4 * m) throw ConfigError("fd: Nx must be at least 4m");
  if (Nt < 1) throw ConfigError("fd: Nt must be positive");
  if (!(theta >= 0.5 && theta <= 1.0)) throw ConfigError("fd: theta must lie in [0.5, 1]");
}

namespace {

struct Stencil {
  int first = 0;
  std::vector<double> w;
};

// m-th derivative at node i from `npts` consecutive nodes, centered when it fits
Stencil stencil(int i, int order, int npts, int n_nodes, double h) {
  int first = i - npts / 2;
  first = std::clamp(first, 0, n_nodes - npts);
  std::vector<double> xs(npts);
  for (int k = 0; k < npts; ++k) xs[k] = (first + k - i) * h;
  return {first, fd_weights(0.0, xs, order)};
}

double apply(const Stencil& s, const Eigen::VectorXd& u) {
  double r = 0.0;
  for (std::size_t k = 0; k < s.w.size(); ++k) r += s.w[k] * u[s.first + static_cast<int>(k)];
  return r;
}

void nonlinear(const Eigen::VectorXd& u, double h, Eigen::VectorXd& out) {
  const int n = static_cast<int>(u.size());
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    double ux;
    if (i == 0)
      ux = (-3 * u[0] + 4 * u[1] - u[2]) / (2 * h);
    else if (i == n - 1)
      ux = (3 * u[n - 1] - 4 * u[n - 2] + u[n - 3]) / (2 * h);
    else
      ux = (u[i + 1] - u[i - 1]) / (2 * h);
    out[i] = -u[i] * ux;
  }
}

// 4-point Lagrange interpolation on a uniform grid
double interp_x(const Eigen::VectorXd& u, double h, double x) {
  const int n = static_cast<int>(u.size());
  int i0 = static_cast<int>(std::floor(x / h)) - 1;
  i0 = std::clamp(i0, 0, n - 4);
  double r = 0.0;
  for (int a = 0; a < 4; ++a) {
    double l = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) l *= (x - (i0 + b) * h) / ((a - b) * h);
    r += l * u[i0 + a];
  }
  return r;
}

}  // namespace

SolutionField solve_fd(const ValidatedSpec& v, const FDConfig& fd, const Grid& out) {
  const int m = v.spec.m, j = v.j;
  fd.validate(m);
  if (out.x.empty() || out.t.empty()) throw DomainError("fd: empty output grid");
  const double xmax = *std::max_element(out.x.begin(), out.x.end());
  if (fd.L < 2.0 * xmax) throw DomainError("fd: L must be at least twice the largest output x");
  for (double t : out.t)
    if (t < 0.0 || t > v.spec.T * (1 + 1e-12)) throw DomainError("fd: output times must lie in [0, T]");
  for (std::size_t k = 1; k < out.t.size(); ++k)
    if (!(out.t[k] > out.t[k - 1])) throw DomainError("fd: output times must increase");

  const int N = fd.Nx + 1;
  const double h = fd.L / fd.Nx, dt = v.spec.T / fd.Nt, th = fd.theta;
  const double sg = (j % 2) ? 1.0 : -1.0;
  const bool nl = v.spec.nonlinear;
  const auto& f = v.spec.f;

  // rows: 0..j-1 left data, j..N-j-2 PDE, N-j-1..N-1 homogeneous right conditions
  std::vector<Stencil> pde(N);
  for (int i = j; i <= N - j - 2; ++i) pde[i] = stencil(i, m, m + 2, N, h);
  std::vector<Stencil> left(j), right(j + 1);
  for (int l = 0; l < j; ++l) left[l] = stencil(0, l, l + 3, N, h);
  for (int l = 0; l <= j; ++l) right[l] = stencil(N - 1, l, l + 3, N, h);

  std::vector<Eigen::Triplet<double>> trip;
  for (int l = 0; l < j; ++l)
    for (std::size_t k = 0; k < left[l].w.size(); ++k) trip.emplace_back(l, left[l].first + k, left[l].w[k]);
  for (int i = j; i <= N - j - 2; ++i) {
    trip.emplace_back(i, i, 1.0);
    for (std::size_t k = 0; k < pde[i].w.size(); ++k) trip.emplace_back(i, pde[i].first + k, th * dt * sg * pde[i].w[k]);
  }
  for (int l = 0; l <= j; ++l) {
    const int row = N - j - 1 + l;
    for (std::size_t k = 0; k < right[l].w.size(); ++k) trip.emplace_back(row, right[l].first + k, right[l].w[k]);
  }
  Eigen::SparseMatrix<double> A(N, N);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) throw NumericalError("fd: singular system matrix");

  Eigen::VectorXd u(N), un(N), rhs(N), nlc, nlp;
  for (int i = 0; i < N; ++i) u[i] = v.spec.u0(i * h);
  const double scale0 = std::max({u.cwiseAbs().maxCoeff(), 1e-300});
  double data_scale = scale0;
  auto forcing = [&](double t, int i) { return f.is_zero() ? 0.0 : f(i * h, t); };

  SolutionField res(out, Provenance::reference_fd);
  std::size_t next_out = 0;
  auto emit = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b, double ta, double tb) {
    while (next_out < out.t.size() && out.t[next_out] <= tb + 1e-12 * std::max(1.0, tb)) {
      const double s = tb > ta ? std::clamp((out.t[next_out] - ta) / (tb - ta), 0.0, 1.0) : 1.0;
      for (std::size_t i = 0; i < out.x.size(); ++i)
        res.at(i, next_out) = (1 - s) * interp_x(a, h, out.x[i]) + s * interp_x(b, h, out.x[i]);
      ++next_out;
    }
  };
  emit(u, u, 0.0, 0.0);

  if (nl) nonlinear(u, h, nlp);
  for (int n = 0; n < fd.Nt; ++n) {
    const double t0 = n * dt, t1 = (n + 1) * dt;
    if (nl) nonlinear(u, h, nlc);
    for (int l = 0; l < j; ++l) {
      rhs[l] = v.spec.g[l](t1);
      data_scale = std::max(data_scale, std::abs(rhs[l]));
    }
    for (int i = j; i <= N - j - 2; ++i) {
      double r = u[i] - (1 - th) * dt * sg * apply(pde[i], u);
      if (nl) r += dt * (n == 0 ? nlc[i] : 1.5 * nlc[i] - 0.5 * nlp[i]);
      if (!f.is_zero()) r += dt * (th * forcing(t1, i) + (1 - th) * forcing(t0, i));
      rhs[i] = r;
    }
    for (int l = 0; l <= j; ++l) rhs[N - j - 1 + l] = 0.0;
    un = lu.solve(rhs);
    if (!un.allFinite() || un.cwiseAbs().maxCoeff() > 1e3 * std::max(data_scale, 1e-300) + 1e3 * dt * (n + 1))
      throw NumericalError("fd: instability detected at t = " + std::to_string(t1));
    emit(u, un, t0, t1);
    if (nl) std::swap(nlp, nlc);
    u.swap(un);
  }
  return res;
}

ConvergenceStudy fd_convergence_study(const ValidatedSpec& v, const std::vector<FDConfig>& fds, const Grid& out) {
  if (fds.size() < 3) throw DomainError("convergence study needs at least three resolutions");
  ConvergenceStudy s;
  std::vector<SolutionField> sol;
  for (const auto& c : fds) sol.push_back(solve_fd(v, c, out));
  for (std::size_t k = 0; k + 1 < sol.size(); ++k) {
    SolutionField d = sol[k + 1];
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= sol[k].values[i];
    s.diffs.push_back(l2_norm(d));
  }
  if (std::all_of(s.diffs.begin(), s.diffs.end(), [](double d) { return d == 0.0; })) {
    s.exact = true;
    s.note = "all resolutions agree exactly";
    return s;
  }
  auto hstep = [&](const FDConfig& c) { return std::max(c.L / c.Nx, v.spec.T / c.Nt); };
  for (std::size_t k = 0; k + 1 < s.diffs.size(); ++k) {
    const double r = hstep(fds[k]) / hstep(fds[k + 1]);
    s.orders.push_back(s.diffs[k + 1] > 0 ? std::log(s.diffs[k] / s.diffs[k + 1]) / std::log(r) : INFINITY);
  }
  bool compatible = true;
  for (const auto& e : compatibility_check(v, 1e-8))
    if (e.required && !e.satisfied) compatible = false;
  s.degraded = !compatible || s.orders.back() < 1.5;
  std::ostringstream os;
  os << "observed order " << s.orders.back();
  if (!compatible) os << "; data violate a required compatibility condition";
  s.note = os.str();
  return s;
}

}  // namespace utm
