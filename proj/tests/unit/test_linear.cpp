#include <doctest.h>

#include <cmath>
#include <numbers>

#include "utm/contour.hpp"
#include "utm/error.hpp"
#include "utm/linear_evaluator.hpp"

using namespace utm;

namespace {

DataHandle B(const std::string& name, const std::map<std::string, double>& p = {}) { return DataHandle::builtin(name, p); }

QuadratureConfig coarse() {
  QuadratureConfig q;
  q.contour_panels = 512;
  return q;
}

ProblemSpec base(int m) {
  ProblemSpec s;
  s.m = m;
  s.T = 1.0;
  s.u0 = B("zero");
  s.g.assign((m - 1) / 2, B("zero"));
  return s;
}

// u = e^{-x}(1 + t) solves the forced linear problem; returns its spec
ProblemSpec manufactured(int m) {
  const int j = (m - 1) / 2;
  const double sg = (j % 2) ? 1.0 : -1.0;
  ProblemSpec s = base(m);
  s.u0 = B("exp_decay");
  s.g[0] = B("linear", {{"a", 1.0}, {"b", 1.0}});
  if (j > 1) s.g[1] = B("linear", {{"a", -1.0}, {"b", -1.0}});
  s.f = ForcingHandle::separable(B("exp_decay"), B("linear", {{"a", 1.0 - sg}, {"b", -sg}}));
  return s;
}

SolutionField exact_manufactured(const Grid& g) {
  SolutionField e(g, Provenance::utm_linear);
  for (std::size_t k = 0; k < g.t.size(); ++k)
    for (std::size_t i = 0; i < g.x.size(); ++i) e.at(i, k) = std::exp(-g.x[i]) * (1.0 + g.t[k]);
  return e;
}

}  // namespace

TEST_CASE("contour nodes: symmetric line and admissible rotations") {
  for (int m : {3, 5, 7}) {
    auto n = make_contour_nodes(m, coarse());
    const std::size_t L = n.line_count;
    for (std::size_t i = 0; i < L; ++i) CHECK(n.xi[i] == -n.xi[L - 1 - i]);
    const int j = (m - 1) / 2;
    for (std::size_t i = L; i < n.size(); ++i) {
      CHECK(std::abs(std::pow(n.xi[i], m).imag()) < 1e-9 * std::abs(std::pow(n.xi[i], m)));
      CHECK(std::abs(std::pow(n.xi[i], m).real() - n.omega[i]) < 1e-9 * std::abs(n.omega[i]));
      CHECK(n.xi[i].imag() > 0.0);
      auto al = rotation_numbers(m, n.sector[i]);
      for (int k = 0; k <= j; ++k) CHECK((al[k] * n.xi[i]).imag() <= kImagSlack);
    }
    CHECK(n.size() == L + static_cast<std::size_t>(j) * L);
  }
}

TEST_CASE("zero data give the zero field") {
  auto v = validated(base(3));
  auto f = evaluate_linear(v, solve_constants(3), Grid::uniform(0, 5, 11, 0, 1, 5), coarse());
  CHECK(f.max_abs() == 0.0);
}

TEST_CASE("initial trace is recovered at t = 0") {
  auto s = base(3);
  s.u0 = B("x_exp");
  auto g = Grid::uniform(0, 10, 81, 0, 0, 1);
  auto f = evaluate_linear(validated(s), solve_constants(3), g, {});
  SolutionField e(g, Provenance::utm_linear);
  for (std::size_t i = 0; i < g.x.size(); ++i) e.at(i, 0) = g.x[i] * std::exp(-g.x[i]);
  CHECK(relative_l2(f, e) < 1e-4);
}

TEST_CASE("manufactured forced solution, m = 3") {
  auto g = Grid::uniform(0, 10, 41, 0, 1, 6);
  auto f = evaluate_linear(validated(manufactured(3)), solve_constants(3), g, {});
  CHECK(relative_l2(f, exact_manufactured(g)) < 1e-4);
  CHECK(f.max_imag() < 1e-10);
}

TEST_CASE("manufactured forced solution, m = 5") {
  auto g = Grid::uniform(0, 10, 41, 0, 1, 6);
  auto f = evaluate_linear(validated(manufactured(5)), solve_constants(5), g, {});
  CHECK(relative_l2(f, exact_manufactured(g)) < 5e-4);
  CHECK(f.max_imag() < 1e-10);
}

TEST_CASE("sampled forcing agrees with the same forcing in separable form") {
  auto s = base(3);
  auto a = B("x_exp", {{"rate", 1.5}});
  auto b = B("sin_wave", {{"freq", 2.0}});
  auto g = Grid::uniform(0, 8, 33, 0, 0.5, 6);
  std::vector<double> fx, ft, fv;
  for (int i = 0; i <= 600; ++i) fx.push_back(30.0 * i / 600);
  for (int k = 0; k <= 250; ++k) ft.push_back(0.5 * k / 250);
  for (double t : ft)
    for (double x : fx) fv.push_back(a(x) * b(t));
  LinearEvaluator ev(validated(s), solve_constants(3), g, coarse());
  auto f1 = ev.forcing_response(ForcingHandle::separable(a, b));
  auto f2 = ev.forcing_response(ForcingHandle::sampled(fx, ft, fv));
  CHECK(relative_l2(f2, f1) < 1e-5);
  CHECK_THROWS_AS(ev.forcing_response(ForcingHandle::callable([](double, double) { return 0.0; })), DomainError);
  std::vector<double> bad = {0.0, 0.3, 0.5};
  CHECK_THROWS_AS(ev.forcing_response(ForcingHandle::sampled(fx, bad, std::vector<double>(fx.size() * 3, 0.0))),
                  DomainError);
}

TEST_CASE("the solution map is linear and real") {
  auto g = Grid::uniform(0, 6, 25, 0, 0.5, 5);
  auto q = coarse();
  auto s1 = base(3), s2 = base(3);
  s1.u0 = B("x_exp");
  s1.g[0] = B("sin2_pulse", {{"period", 0.5}});
  s2.u0 = B("gauss_bump", {{"center", 2.0}, {"width", 0.5}});
  s2.g[0] = B("gauss_bump", {{"amp", 0.2}, {"center", 0.3}, {"width", 0.1}});
  s2.f = ForcingHandle::separable(B("exp_decay"), B("constant"));
  const double a = 1.7, b = -0.4;
  auto s3 = base(3);
  s3.u0 = DataHandle::combine(a, s1.u0, b, s2.u0);
  s3.g[0] = DataHandle::combine(a, s1.g[0], b, s2.g[0]);
  s3.f = ForcingHandle::separable(B("exp_decay"), B("constant", {{"value", b}}));
  auto c = solve_constants(3);
  auto f1 = evaluate_linear(validated(s1), c, g, q);
  auto f2 = evaluate_linear(validated(s2), c, g, q);
  auto f3 = evaluate_linear(validated(s3), c, g, q);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < f3.values.size(); ++i) {
    num = std::max(num, std::abs(f3.values[i] - a * f1.values[i] - b * f2.values[i]));
    den = std::max(den, std::abs(f3.values[i]));
  }
  CHECK(num <= 1e-12 * den);
  for (const auto* f : {&f1, &f2, &f3}) CHECK(f->max_imag() <= 1e-6 * f->max_abs());
}

TEST_CASE("boundary trace is recovered near x = 0") {
  auto s = base(3);
  s.T = 2.0;
  s.g[0] = B("sin2_pulse", {{"period", 2.0}});
  Grid g;
  g.x = {0.0, 1e-3};
  for (int k = 0; k <= 40; ++k) g.t.push_back(2.0 * k / 40);
  auto f = evaluate_linear(validated(s), solve_constants(3), g, coarse());
  double e0 = 0, e1 = 0, n = 0;
  for (std::size_t k = 0; k < g.t.size(); ++k) {
    e0 += std::norm(f.at(0, k) - s.g[0](g.t[k]));
    e1 += std::norm(f.at(1, k) - s.g[0](g.t[k]));
    n += std::pow(s.g[0](g.t[k]), 2);
  }
  CHECK(std::sqrt(e0 / n) < 1e-4);
  CHECK(std::sqrt(e1 / n) < 2e-3);
}

TEST_CASE("ray integrals: decay in x and continuity at the boundary") {
  auto s = base(3);
  s.u0 = B("x_exp");
  s.g[0] = B("sin2_pulse", {{"period", 1.0}});
  Grid g{{0.5}, {0.5}};
  LinearEvaluator ev(validated(s), solve_constants(3), g, {});
  const double gi = std::sin(std::numbers::pi / 3.0);
  for (RayTerm term : {RayTerm{RayTerm::Kind::initial, 1}, RayTerm{RayTerm::Kind::boundary, 0}})
    CHECK(std::abs(ev.ray_integral(term, 1, 10.0 / gi, 0.5)) < 1e-8);
  RayTerm bt{RayTerm::Kind::boundary, 0};
  cd a = ev.ray_integral(bt, 1, 1e-3, 0.5), b = ev.ray_integral(bt, 1, 1e-2, 0.5);
  CHECK(std::isfinite(std::abs(a)));
  CHECK(std::abs(a - b) < 0.05);
  CHECK(ev.ray_integral(RayTerm{RayTerm::Kind::forcing, 2}, 1, 0.2, 0.5) == cd(0.0));
  CHECK_THROWS_AS(ev.ray_integral(bt, 2, 0.1, 0.5), DomainError);
}

TEST_CASE("whole-line oracle: inversion at t = 0 and L2 conservation") {
  auto U0 = B("gauss_bump", {{"center", 5.0}, {"width", 0.5}});
  Grid g = Grid::uniform(-15, 15, 1201, 0, 0.05, 2);
  auto f = wholeline_oracle(U0, 3, g, {});
  double e = 0, n0 = 0, n1 = 0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    e = std::max(e, std::abs(f.at(i, 0) - U0(g.x[i])));
    n0 += std::norm(f.at(i, 0));
    n1 += std::norm(f.at(i, 1));
  }
  CHECK(e < 1e-8);
  CHECK(std::abs(n1 / n0 - 1.0) < 1e-6);
}

TEST_CASE("evaluator rejects malformed grids") {
  auto v = validated(base(3));
  auto c = solve_constants(3);
  CHECK_THROWS_AS(LinearEvaluator(v, c, Grid{{-1.0, 0.0}, {0.0}}, coarse()), DomainError);
  CHECK_THROWS_AS(LinearEvaluator(v, c, Grid{{0.0, 1.0}, {0.5, 0.1}}, coarse()), DomainError);
  CHECK_THROWS_AS(LinearEvaluator(v, solve_constants(5), Grid{{0.0}, {0.0}}, coarse()), DomainError);
}
