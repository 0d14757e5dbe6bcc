#include "utm/nonlinear_solver.hpp"

#include <cmath>
#include <sstream>

#include "utm/quadrature.hpp"

namespace utm {

namespace {

void check_uniform(const std::vector<double>& v, const char* axis) {
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double h0 = v[1] - v[0], h = v[i + 1] - v[i];
    if (std::abs(h - h0) > 1e-9 * std::abs(h0)) throw DomainError(std::string("pde_residual: ") + axis + " grid must be uniform");
  }
}

std::string join(const std::vector<double>& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? ", " : "") << r[i];
  return os.str();
}

}  // namespace

ForcingHandle burgers_forcing(const SolutionField& u) {
  const std::size_t nx = u.nx(), nt = u.nt();
  if (nx < 3) throw DomainError("nonlinear forcing needs at least 3 x points");
  std::vector<double> v(nx * nt);
  std::vector<double> w(nx);
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::size_t i = 0; i < nx; ++i) w[i] = 0.5 * std::pow(u.at(i, k).real(), 2);
    for (std::size_t i = 0; i < nx; ++i) {
      double d;
      if (i == 0) {
        const double h0 = u.x[1] - u.x[0], h1 = u.x[2] - u.x[1];
        d = -(2 * h0 + h1) / (h0 * (h0 + h1)) * w[0] + (h0 + h1) / (h0 * h1) * w[1] - h0 / (h1 * (h0 + h1)) * w[2];
      } else if (i == nx - 1) {
        const double h1 = u.x[i] - u.x[i - 1], h0 = u.x[i - 1] - u.x[i - 2];
        d = (2 * h1 + h0) / (h1 * (h0 + h1)) * w[i] - (h0 + h1) / (h0 * h1) * w[i - 1] + h1 / (h0 * (h0 + h1)) * w[i - 2];
      } else {
        const double hm = u.x[i] - u.x[i - 1], hp = u.x[i + 1] - u.x[i];
        d = (-hp / (hm * (hm + hp))) * w[i - 1] + ((hp - hm) / (hm * hp)) * w[i] + (hm / (hp * (hm + hp))) * w[i + 1];
      }
      v[k * nx + i] = -d;
    }
  }
  return ForcingHandle::sampled(u.x, u.t, std::move(v));
}

PicardResult picard_solve(const ValidatedSpec& spec, const UTMConstants& constants, const Grid& grid,
                          const QuadratureConfig& q, int max_iter, double tol, bool keep_iterates) {
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!(tol > 0)) throw ConfigError("tol must be positive");
  if (grid.t.empty() || grid.t.front() != 0.0) throw DomainError("picard_solve: t grid must start at 0");
  if (grid.x.size() < 3) throw DomainError("picard_solve: need at least 3 x points");
  if (spec.spec.f.kind() == ForcingHandle::Kind::sampled || spec.spec.f.kind() == ForcingHandle::Kind::callable)
    throw DomainError("picard_solve: external forcing must be separable");

  PicardResult res;
  auto& st = res.state;
  const double T = grid.t.back();
  try {
    const double life = lifespan(spec.spec.s, spec.spec.m, data_norm(spec));
    if (T > life) {
      std::ostringstream os;
      os << "horizon " << T << " exceeds the small-data lifespan guidance " << life;
      st.warnings.push_back(os.str());
    }
  } catch (const Error& e) {
    st.warnings.push_back(std::string("lifespan guidance unavailable: ") + e.what());
  }

  LinearEvaluator ev(spec, constants, grid, q);
  for (const auto& w : ev.warnings()) st.warnings.push_back(w);
  const SolutionField base = ev.evaluate();
  SolutionField u = base;
  u.provenance = Provenance::utm_picard;
  if (keep_iterates) st.iterates.push_back(u);

  int bad = 0;
  for (int it = 0; it < max_iter; ++it) {
    SolutionField next = ev.forcing_response(burgers_forcing(u));
    for (std::size_t i = 0; i < next.values.size(); ++i) next.values[i] += base.values[i];
    next.provenance = Provenance::utm_picard;

    SolutionField d = next;
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= u.values[i];
    const double dn = l2_norm(d), un = l2_norm(next);
    st.diff_norms.push_back(dn);
    if (st.diff_norms.size() > 1) {
      const double prev = st.diff_norms[st.diff_norms.size() - 2];
      const double r = prev > 0 ? dn / prev : 0.0;
      st.contraction_ratios.push_back(r);
      bad = (r >= 1.0) ? bad + 1 : 0;
    }
    u = std::move(next);
    if (keep_iterates) st.iterates.push_back(u);
    if (!std::isfinite(dn)) throw NumericalError("picard_solve: iterate is not finite");
    if (dn <= tol * un) {
      st.converged = true;
      break;
    }
    if (bad >= 3)
      throw NonContractionError("picard iteration is not contracting; ratios: " + join(st.contraction_ratios),
                                st.contraction_ratios);
  }
  if (!keep_iterates) st.iterates.push_back(u);
  res.field = std::move(u);
  return res;
}

ContractionReport contraction_report(const std::vector<double>& d, bool converged) {
  ContractionReport r;
  r.converged = converged;
  for (std::size_t i = 1; i < d.size(); ++i) r.ratios.push_back(d[i - 1] > 0 ? d[i] / d[i - 1] : 0.0);
  // fit log d_n = a + n log rate over the positive entries
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > 0) pts.emplace_back(static_cast<double>(i), std::log(d[i]));
  if (pts.size() < 2) {
    r.note = "insufficient data";
    return r;
  }
  r.sufficient = true;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  r.rate = std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
  r.diverging = r.rate > 1.0;
  r.note = r.diverging ? "diverging" : (converged ? "converged" : "contracting");
  return r;
}

ContractionReport contraction_report(const PicardState& s) { return contraction_report(s.diff_norms, s.converged); }

double pde_residual(const SolutionField& f, int m) {
  if (m < 3 || m % 2 == 0) throw DomainError("pde_residual: m must be odd and at least 3");
  const int j = (m - 1) / 2;
  const std::size_t nx = f.nx(), nt = f.nt();
  if (nx < static_cast<std::size_t>(m + 3) || nt < 3) throw DomainError("pde_residual: grid too coarse");
  check_uniform(f.x, "x");
  check_uniform(f.t, "t");
  const double hx = f.x[1] - f.x[0], ht = f.t[1] - f.t[0];
  const int hw = j + 1;
  std::vector<double> off;
  for (int o = -hw; o <= hw; ++o) off.push_back(o * hx);
  const auto dm = fd_weights(0.0, off, m);
  const auto d1 = fd_weights(0.0, off, 1);
  const double sg = (j % 2) ? 1.0 : -1.0;

  double scale = 1.0;
  for (const auto& v : f.values) scale = std::max(scale, std::abs(v));
  double s = 0.0;
  for (std::size_t k = 1; k + 1 < nt; ++k)
    for (std::size_t i = hw; i + hw < nx; ++i) {
      const cd ut = (f.at(i, k + 1) - f.at(i, k - 1)) / (2 * ht);
      cd umx = 0.0, ux = 0.0;
      for (int o = -hw; o <= hw; ++o) {
        umx += dm[o + hw] * f.at(i + o, k);
        ux += d1[o + hw] * f.at(i + o, k);
      }
      s += std::norm(ut + sg * umx + f.at(i, k) * ux);
    }
  return std::sqrt(s * hx * ht) / scale;
}

}  // namespace utm
