#include "utm/field.hpp"

#include <algorithm>
#include <cmath>

#include "utm/error.hpp"

namespace utm {

Grid Grid::uniform(double x0, double x1, int nx, double t0, double t1, int nt) {
  if (nx < 1 || nt < 1) throw ConfigError("grid sizes must be positive");
  Grid g;
  for (int i = 0; i < nx; ++i) g.x.push_back(nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1));
  for (int k = 0; k < nt; ++k) g.t.push_back(nt == 1 ? t0 : t0 + (t1 - t0) * k / (nt - 1));
  return g;
}

bool Grid::is_uniform(double tol) const {
  auto uni = [tol](const std::vector<double>& v) {
    if (v.size() < 3) return true;
    const double h = v[1] - v[0];
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
      if (std::abs((v[i + 1] - v[i]) - h) > tol * std::max(1.0, std::abs(h))) return false;
    return true;
  };
  return uni(x) && uni(t);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::utm_linear:
      return "utm-linear";
    case Provenance::utm_picard:
      return "utm-picard";
    case Provenance::wholeline_oracle:
      return "wholeline-oracle";
    case Provenance::reference_fd:
      return "reference-fd";
  }
  return "unknown";
}

SolutionField::SolutionField(const Grid& g, Provenance p)
    : x(g.x), t(g.t), values(g.x.size() * g.t.size(), 0.0), provenance(p) {}

double SolutionField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double SolutionField::max_imag() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
  return m;
}

namespace {

std::vector<double> trap_weights(const std::vector<double>& v) {
  std::vector<double> w(v.size(), 1.0);
  if (v.size() < 2) return w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double l = i > 0 ? v[i] - v[i - 1] : 0.0;
    double r = i + 1 < v.size() ? v[i + 1] - v[i] : 0.0;
    w[i] = 0.5 * (l + r);
  }
  return w;
}

}  // namespace

double l2_norm(const SolutionField& f) {
  auto wx = trap_weights(f.x), wt = trap_weights(f.t);
  double s = 0.0;
  for (std::size_t k = 0; k < f.nt(); ++k)
    for (std::size_t i = 0; i < f.nx(); ++i) s += wx[i] * wt[k] * std::norm(f.at(i, k));
  return std::sqrt(s);
}

double relative_l2(const SolutionField& a, const SolutionField& b) {
  if (a.x != b.x || a.t != b.t) throw DomainError("relative_l2: fields live on different grids");
  SolutionField d = a;
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= b.values[i];
  const double nb = l2_norm(b);
  const double nd = l2_norm(d);
  if (nb == 0.0) return nd == 0.0 ? 0.0 : INFINITY;
  return nd / nb;
}

SolutionField restrict(const SolutionField& f, double x0, double x1, double t0, double t1) {
  Grid g;
  std::vector<std::size_t> ix, it;
  for (std::size_t i = 0; i < f.nx(); ++i)
    if (f.x[i] >= x0 - 1e-12 && f.x[i] <= x1 + 1e-12) {
      g.x.push_back(f.x[i]);
      ix.push_back(i);
    }
  for (std::size_t k = 0; k < f.nt(); ++k)
    if (f.t[k] >= t0 - 1e-12 && f.t[k] <= t1 + 1e-12) {
      g.t.push_back(f.t[k]);
      it.push_back(k);
    }
  SolutionField r(g, f.provenance);
  r.quad = f.quad;
  for (std::size_t k = 0; k < it.size(); ++k)
    for (std::size_t i = 0; i < ix.size(); ++i) r.at(i, k) = f.at(ix[i], it[k]);
  return r;
}

}  // namespace utm
