// Acceptance suite: one PASS/FAIL line per criterion, tolerance and runtime budget included.
// Usage: utm_acceptance [criterion numbers...]   (all when none given)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "utm/cli.hpp"
#include "utm/contour.hpp"
#include "utm/error.hpp"
#include "utm/estimate_auditor.hpp"
#include "utm/global_relation.hpp"
#include "utm/linear_evaluator.hpp"
#include "utm/nonlinear_solver.hpp"
#include "utm/problem.hpp"
#include "utm/reference_fd.hpp"

using namespace utm;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  // record one measured quantity against its bound
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + what + (ok ? "" : " [x]");
  }
};

std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

DataHandle B(const std::string& name, const std::map<std::string, double>& p = {}) {
  return DataHandle::builtin(name, p);
}

ProblemSpec empty_spec(int m, double T) {
  ProblemSpec s;
  s.m = m;
  s.T = T;
  s.g.assign((m - 1) / 2, DataHandle());
  return s;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

// --- 1 ------------------------------------------------------------------------------------
Outcome kdv_constants() {
  Outcome o;
  const auto c = solve_constants(3);
  const cd c11 = std::polar(1.0, 2 * kPi / 3) / (2 * kPi), c12 = std::polar(1.0, 4 * kPi / 3) / (2 * kPi);
  const double e = std::max({std::abs(c.C[0][0] - c11), std::abs(c.C[0][1] - c12),
                             std::abs(c.Cprime[0][0] - cd(3 / (2 * kPi)))});
  o.check(e < 1e-10, "max |C - closed form| = " + num(e) + " (< 1e-10)");
  return o;
}

// --- 2 ------------------------------------------------------------------------------------
Outcome elimination() {
  Outcome o;
  const std::vector<cd> xis = {cd(1, 0), cd(0.3, -1.7), cd(-2.5, 0.4), std::polar(2.0, kPi / 10)};
  for (int m : {5, 7}) {
    const auto c = solve_constants(m);
    const double r = residual_check(c, default_samples(m));
    double ind = 0;
    for (cd xi : xis) {
      const auto k = constants_at(m, xi);
      for (std::size_t p = 0; p < c.C.size(); ++p) {
        ind = std::max(ind, max_abs_diff(k.C[p], c.C[p]));
        ind = std::max(ind, max_abs_diff(k.Cprime[p], c.Cprime[p]));
      }
    }
    o.check(r < 1e-10, "m=" + std::to_string(m) + " residual " + num(r) + " (< 1e-10)");
    o.check(ind < 1e-10, "m=" + std::to_string(m) + " xi-independence " + num(ind) + " (< 1e-10)");
  }
  // m = 5: two sectors, three rotations each, boundary unknowns paired with (i xi)^{4-l}, l = 0, 1
  const auto c5 = solve_constants(5);
  bool shape = c5.C.size() == 2 && c5.Cprime.size() == 2 && c5.j == 2;
  for (std::size_t p = 0; shape && p < 2; ++p) shape = c5.C[p].size() == 3 && c5.Cprime[p].size() == 2;
  for (std::size_t p = 0; shape && p < 2; ++p) {
    const auto sys = assemble_system(5, static_cast<int>(p) + 1);
    shape = sys.alpha.size() == 3 && sys.matrix.rows() == 3 && sys.matrix.cols() == 3;
  }
  o.check(shape, "m=5 structure 2 sectors x 3 rotations, powers (i xi)^{4-l}");
  return o;
}

// --- 3 ------------------------------------------------------------------------------------
Outcome rotation_invariance() {
  Outcome o;
  double e = 0;
  for (int m : {3, 5, 7, 9})
    for (int p = 1; p <= (m - 1) / 2; ++p)
      for (cd a : rotation_numbers(m, p)) e = std::max(e, std::abs(std::pow(a, m) - 1.0));
  o.check(e < 1e-14, "max |alpha^m - 1| = " + num(e) + " (< 1e-14)");
  const auto a = rotation_numbers(3, 1);
  const cd w1 = std::polar(1.0, 2 * kPi / 3), w2 = std::polar(1.0, 4 * kPi / 3);
  const bool exact = a.size() == 2 && a[0] == w1 && a[1] == w2;
  o.check(exact, "rotation_numbers(3,1) == {e^{2 pi i/3}, e^{4 pi i/3}} bitwise");
  return o;
}

// --- 4 ------------------------------------------------------------------------------------
Outcome initial_trace() {
  Outcome o;
  auto s = empty_spec(3, 0.25);
  s.u0 = B("x_exp");
  Grid g{linspace(0, 10, 128), {0.0}};
  const auto f = evaluate_linear(validated(s), solve_constants(3), g, QuadratureConfig{});
  SolutionField ref(g, Provenance::utm_linear);
  for (std::size_t i = 0; i < g.x.size(); ++i) ref.at(i, 0) = s.u0(g.x[i]);
  const double e = relative_l2(f, ref);
  o.check(e <= 1e-4, "relative L2 at t=0 = " + num(e) + " (<= 1e-4)");
  return o;
}

// --- 5 ------------------------------------------------------------------------------------
double trace_error(const ProblemSpec& s) {
  Grid g{{1e-3}, linspace(0, s.T, 129)};
  const auto f = evaluate_linear(validated(s), solve_constants(s.m), g, QuadratureConfig{});
  SolutionField ref(g, Provenance::utm_linear);
  for (std::size_t k = 0; k < g.t.size(); ++k) ref.at(0, k) = s.g[0](g.t[k]);
  return relative_l2(f, ref);
}

Outcome boundary_trace() {
  Outcome o;
  // the x = 1e-3 offset costs about 1e-3 * |u_x| / |g0|; a long pulse keeps u_x small
  auto s3 = empty_spec(3, 8.0);
  s3.g[0] = B("sin2_pulse", {{"period", 8.0}});
  const double e3 = trace_error(s3);
  o.check(e3 <= 1e-3, "m=3 relative L2 of u(1e-3,.) - g0 = " + num(e3) + " (<= 1e-3)");

  auto s5 = empty_spec(5, 1.0);
  s5.g[0] = B("sin2_pulse", {{"period", 1.0}});
  s5.g[1] = B("sin2_pulse", {{"amp", 0.5}, {"period", 1.0}});
  const double e5 = trace_error(s5);
  o.check(e5 <= 5e-3, "m=5 relative L2 = " + num(e5) + " (<= 5e-3)");
  return o;
}

// --- 6 ------------------------------------------------------------------------------------
Outcome wholeline_identity() {
  Outcome o;
  const double T = 0.05;
  // the bump is below 1e-9 outside [2, 4]
  const auto U0 = B("gauss_bump", {{"center", 3.0}, {"width", 0.15}});
  auto s = empty_spec(3, T);
  s.u0 = U0;
  const auto times = linspace(0, T, 4001);
  s.g[0] = DataHandle::sampled(times, wholeline_traces(U0, 3, 0, times));
  Grid g{linspace(1, 6, 101), linspace(0, T, 11)};
  const auto f = evaluate_linear(validated(s), solve_constants(3), g, QuadratureConfig{});
  const auto ref = wholeline_oracle(U0, 3, g, QuadratureConfig{});
  const double e = relative_l2(f, ref);
  o.check(e <= 1e-4, "relative L2 vs whole-line oracle = " + num(e) + " (<= 1e-4)");
  return o;
}

// --- 7 ------------------------------------------------------------------------------------
Outcome linearity_realness() {
  Outcome o;
  const auto g = Grid::uniform(0, 8, 33, 0, 0.5, 6);
  const auto c = solve_constants(3);
  const QuadratureConfig q;
  auto s1 = empty_spec(3, 0.5), s2 = empty_spec(3, 0.5), s3 = empty_spec(3, 0.5);
  s1.u0 = B("x_exp");
  s1.g[0] = B("sin2_pulse", {{"period", 0.5}});
  s2.u0 = B("gauss_bump", {{"center", 2.0}, {"width", 0.5}});
  s2.g[0] = B("linear", {{"a", 0.0}, {"b", 0.3}});
  s2.f = ForcingHandle::separable(B("exp_decay"), B("constant"));
  const double a = 1.7, b = -0.4;
  s3.u0 = DataHandle::combine(a, s1.u0, b, s2.u0);
  s3.g[0] = DataHandle::combine(a, s1.g[0], b, s2.g[0]);
  s3.f = ForcingHandle::separable(B("exp_decay"), B("constant", {{"value", b}}));
  const auto f1 = evaluate_linear(validated(s1), c, g, q), f2 = evaluate_linear(validated(s2), c, g, q),
             f3 = evaluate_linear(validated(s3), c, g, q);
  SolutionField comb = f3;
  for (std::size_t i = 0; i < comb.values.size(); ++i) comb.values[i] = a * f1.values[i] + b * f2.values[i];
  const double lin = relative_l2(f3, comb);
  o.check(lin <= 1e-12, "linearity defect " + num(lin) + " (<= 1e-12)");

  // realness: every decaying builtin as initial datum, every builtin as boundary datum
  double worst = 0;
  std::string worst_name;
  int runs = 0;
  for (const auto& name : DataHandle::catalog()) {
    if (name == "zero") continue;
    std::vector<ProblemSpec> cases;
    if (name == "exp_decay" || name == "x_exp" || name == "gauss_bump") {
      auto s = empty_spec(3, 0.5);
      s.u0 = name == "gauss_bump" ? B(name, {{"center", 3.0}, {"width", 0.5}}) : B(name);
      cases.push_back(s);
    }
    auto s = empty_spec(3, 0.5);
    s.g[0] = B(name);
    cases.push_back(s);
    for (const auto& sp : cases) {
      const auto f = evaluate_linear(validated(sp), c, g, q);
      const double r = f.max_imag() / std::max(f.max_abs(), 1e-300);
      ++runs;
      if (r > worst) {
        worst = r;
        worst_name = name;
      }
    }
  }
  o.check(worst <= 1e-6, "max |Im u|/max|u| over " + std::to_string(runs) + " builtin runs = " + num(worst) + " (" +
                             worst_name + ", <= 1e-6)");
  return o;
}

// --- 8, 9 ---------------------------------------------------------------------------------
ProblemSpec small_data(double eps) {
  auto s = empty_spec(3, 0.2);
  s.nonlinear = true;
  s.u0 = B("x_exp", {{"amp", eps}});
  return s;
}

Outcome picard() {
  Outcome o;
  const auto c = solve_constants(3);
  const auto v = validated(small_data(0.05));
  const auto g = Grid::uniform(0, 10, 128, 0, 0.2, 64);
  const auto r = picard_solve(v, c, g, QuadratureConfig{}, 25, 1e-8, false);
  double qmax = 0;
  for (double q : r.state.contraction_ratios) qmax = std::max(qmax, q);
  o.check(qmax < 1, "max contraction ratio " + num(qmax) + " (< 1)");
  o.check(r.state.converged && r.state.diff_norms.size() <= 25,
          "converged in " + std::to_string(r.state.diff_norms.size()) + " iterations to 1e-8 (<= 25)");
  const auto fd = solve_fd(v, FDConfig{}, g);
  const double e = relative_l2(r.field, fd);
  o.check(e <= 1e-2, "relative L2 vs finite differences " + num(e) + " (<= 1e-2)");

  const auto g2 = Grid::uniform(0, 10, 255, 0, 0.2, 127);
  const auto r2 = picard_solve(v, c, g2, QuadratureConfig{}, 25, 1e-8, false);
  const double p1 = pde_residual(r.field, 3), p2 = pde_residual(r2.field, 3);
  o.check(p2 < p1, "pde residual " + num(p1) + " -> " + num(p2) + " under 2x refinement (decreasing)");
  return o;
}

Outcome scaling() {
  Outcome o;
  const auto c = solve_constants(3);
  const auto g = Grid::uniform(0, 10, 128, 0, 0.2, 64);
  std::vector<double> gaps;
  for (double eps : {0.0125, 0.025, 0.05}) {
    const auto v = validated(small_data(eps));
    const auto r = picard_solve(v, c, g, QuadratureConfig{}, 25, 1e-8, false);
    auto lin = v;
    lin.spec.nonlinear = false;
    const auto u_lin = evaluate_linear(lin, c, g, QuadratureConfig{});
    SolutionField d = r.field;
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= u_lin.values[i];
    gaps.push_back(l2_norm(d));
  }
  for (int k = 0; k < 2; ++k) {
    const double ratio = gaps[k + 1] / gaps[k];
    o.check(ratio >= 4 / 1.5 && ratio <= 4 * 1.5,
            "gap ratio " + num(ratio) + " for eps doubling (quadratic 4, within x1.5)");
  }
  return o;
}

// --- 10-12 --------------------------------------------------------------------------------
Outcome dm_bound() {
  Outcome o;
  const auto r3 = audit_dm_bound(3, DmWeight::xi);
  o.check(std::abs(r3.value - 3) <= 1e-12, "c_3 = " + num(r3.value) + " (3 +- 1e-12)");
  for (int m : {5, 7})
    for (auto w : {DmWeight::xi, DmWeight::xi1}) {
      const auto r = audit_dm_bound(m, w);
      o.check(r.value > 0 && r.stability_delta < 0.25, r.inequality_id + " m=" + std::to_string(m) + " c=" +
                                                           num(r.value) + " drift " + num(r.stability_delta) +
                                                           " (> 0, < 25%)");
    }
  return o;
}

Outcome calculus() {
  Outcome o;
  AuditOptions opt;
  opt.samples = 10000;
  for (int k : {1, 5}) {
    const auto r = audit_calc_inequality(k, opt);
    o.check(r.bounded && std::isfinite(r.value), "calc " + std::to_string(k) + " sup " + num(r.value) + " drift " +
                                                     num(r.stability_delta) + " (bounded, < 25%)");
  }
  const double one = calc_ratio(1, 0.75, 0, 0, 0);
  o.check(std::abs(one - 1) <= 1e-6, "calc 1 at l=3/4, a=c=0: " + num(one) + " (1 +- 1e-6)");
  return o;
}

Outcome multipliers() {
  Outcome o;
  const auto t4 = audit_theta4({3, 0.45, 0.45, 0.55});
  o.check(t4.bounded, "theta4 sup " + num(t4.value) + " drift " + num(t4.stability_delta) + " (bounded-stable)");
  const auto g1 = audit_G(1, 0.0, 0.45, 3, 0, log_tau_grid(1e6, 2001));
  o.check(std::isfinite(g1.value), "G1 sup " + num(g1.value) + " over |tau| <= 1e6 (finite)");
  const auto hi = audit_microlocal_theta(2, {3, 0.49, 0.49, 0.55});
  o.check(hi.bounded, "theta2 b'=0.49 sup " + num(hi.value) + " growth " + num(hi.growth_exponent) + " (bounded)");
  const auto lo = audit_microlocal_theta(2, {3, 0.3, 0.3, 0.55});
  o.check(lo.growth_flagged, "theta2 b'=0.3 growth exponent " + num(lo.growth_exponent) + " (flagged)");
  return o;
}

// --- 13 -----------------------------------------------------------------------------------
Outcome window() {
  Outcome o;
  std::mt19937_64 rng(13);
  int bad = 0;
  for (int n = 0; n < 100; ++n) {
    const int m = 3 + 2 * static_cast<int>(rng() % 5);
    const double j = (m - 1) / 2;
    const double lo = -j + 0.25, u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double s = lo + (m - lo) * (0.001 + 0.998 * u);
    const auto w = parameter_window(s, m);
    const bool ok = 0.5 - w.beta <= w.b && w.b <= w.b1 && w.b1 < 0.5 && 0.5 < w.alpha && w.alpha <= w.alpha1 &&
                    w.alpha1 <= 0.5 + w.beta && w.b < w.b1 && w.alpha < w.alpha1;
    bad += !ok;
  }
  o.check(bad == 0, std::to_string(100 - bad) + "/100 windows ordered");
  const double b0 = beta(0, 3);
  o.check(std::abs(b0 - 1.0 / 36) < 1e-15, "beta(0,3) = " + num(b0) + " (1/36)");
  return o;
}

// --- 14 -----------------------------------------------------------------------------------
std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / "utm_acceptance_14";
  fs::remove_all(dir);
  std::ostringstream err;
  bool same = true;
  for (const std::string audit : {"dm", "calc", "theta"}) {
    auto cfg = parse_config("mode = audit\naudit = " + audit + "\nm = 5\naudit_which = 2\nseed = 4242\naudit_samples = 1000\nout = " +
                            (dir / audit).string() + "\n");
    same = same && run(cfg, err) == 0;
    const auto first = slurp(dir / audit / "report.json");
    same = same && run(cfg, err) == 0 && slurp(dir / audit / "report.json") == first && !first.empty();
  }
  o.check(same, "seeded audit reports byte-identical");

  bool rt = true;
  for (const std::string text :
       {"mode = linear\nm = 3\nu0 = builtin:gauss_bump(center=3, width=0.5, amp=0.05)\nT = 0.3\n",
        "mode = nonlinear\nm = 3\nu0 = builtin:x_exp(amp=0.05)\nT = 0.2\ntol = 1e-9\nnx = 64\n",
        "mode = reference\nm = 5\nu0 = zero\ng0 = builtin:sin2_pulse(period=1)\ng1 = builtin:linear(a=0, b=2)\nfd_nx = 3000\n",
        "mode = audit\naudit = theta\naudit_which = 5\naudit_b1 = 0.4\naudit_alpha1 = 0.6\nseed = 99\n",
        "mode = constants\nm = 9\n", "mode = params\ns = -0.2\nm = 7\n"}) {
    const auto c = parse_config(text);
    rt = rt && parse_config(emit_config(c)) == c && emit_config(parse_config(emit_config(c))) == emit_config(c);
  }
  o.check(rt, "parse(emit(config)) == config");

  SolutionField f(Grid::uniform(0, 10, 40, 0, 0.25, 12), Provenance::utm_linear);
  std::mt19937_64 rng(14);
  std::normal_distribution<double> N(0, 1);
  for (auto& v : f.values) v = cd(N(rng), N(rng) * 1e-3);
  fs::create_directories(dir);
  write_field_csv(f, (dir / "field.csv").string());
  const auto g = read_field_csv((dir / "field.csv").string());
  double e = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    e = std::max(e, std::abs(g.values[i] - f.values[i]) / std::abs(f.values[i]));
  bool grid_ok = g.x.size() == f.x.size() && g.t.size() == f.t.size();
  write_field_csv(g, (dir / "again.csv").string());
  const bool bytes = slurp(dir / "field.csv") == slurp(dir / "again.csv");
  o.check(grid_ok && e <= 5e-13 && bytes, "csv reload max relative change " + num(e) + " (<= 5e-13, rewrite identical)");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "KdV constant recovery", 1, kdv_constants},
      {2, "elimination certification m=5,7", 1, elimination},
      {3, "rotation invariance", 1, rotation_invariance},
      {4, "initial-trace recovery", 120, initial_trace},
      {5, "boundary-trace recovery", 300, boundary_trace},
      {6, "whole-line decomposition identity", 300, wholeline_identity},
      {7, "linearity and realness", 60, linearity_realness},
      {8, "Picard contraction and oracle agreement", 600, picard},
      {9, "small-data scaling", 900, scaling},
      {10, "d_m identity and bound", 60, dm_bound},
      {11, "calculus inequalities", 120, calculus},
      {12, "multiplier audits", 600, multipliers},
      {13, "parameter window", 1, window},
      {14, "determinism and round-trip", 60, determinism},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %s: %s; runtime %.2f s (< %g s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                secs, c.budget_s, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
