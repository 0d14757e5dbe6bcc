#include <doctest.h>

#include <cmath>
#include <random>

#include "utm/error.hpp"
#include "utm/problem.hpp"

using namespace utm;

namespace {

ProblemSpec spec3(double s, DataHandle u0, DataHandle g0) {
  ProblemSpec p;
  p.m = 3;
  p.T = 0.25;
  p.s = s;
  p.u0 = std::move(u0);
  p.g = {std::move(g0)};
  return p;
}

}  // namespace

TEST_CASE("validate_spec") {
  auto r = validate_spec(spec3(0, DataHandle(), DataHandle()));
  CHECK(r.ok);
  CHECK(r.value.j == 1);

  ProblemSpec p5 = spec3(0, DataHandle(), DataHandle());
  p5.m = 5;
  r = validate_spec(p5);
  REQUIRE_FALSE(r.ok);
  CHECK(r.errors[0].find("expected 2 boundary data") != std::string::npos);

  ProblemSpec p4 = p5;
  p4.m = 4;
  r = validate_spec(p4);
  REQUIRE_FALSE(r.ok);
  CHECK(r.errors[0] == "m must be odd");

  ProblemSpec pn = spec3(0, DataHandle(), DataHandle());
  pn.nonlinear = true;
  pn.T = 0.6;
  CHECK_FALSE(validate_spec(pn).ok);

  auto flagged = validate_spec(spec3(0.5, DataHandle(), DataHandle()));
  CHECK(flagged.ok);
  CHECK(flagged.value.warnings.size() == 1);
}

TEST_CASE("compatibility_check") {
  auto e = DataHandle::builtin("exp_decay");
  auto c = compatibility_check(validated(spec3(0.0, e, DataHandle::builtin("linear", {{"a", 1}, {"b", 1}}))));
  CHECK_FALSE(c[0].required);

  c = compatibility_check(validated(spec3(1.0, e, DataHandle::builtin("linear", {{"a", 1}, {"b", 1}}))));
  CHECK(c[0].required);
  CHECK(c[0].residual < 1e-14);
  CHECK(c[0].satisfied);

  c = compatibility_check(validated(spec3(1.0, e, DataHandle::builtin("linear", {{"a", 0}, {"b", 1}}))));
  CHECK(c[0].required);
  CHECK(c[0].residual == doctest::Approx(1.0));
  CHECK_FALSE(c[0].satisfied);
}

TEST_CASE("compatibility requirement is monotone in s") {
  ProblemSpec p;
  p.m = 7;
  p.g = {DataHandle(), DataHandle(), DataHandle()};
  for (double s1 = -1.0; s1 < 4.0; s1 += 0.25) {
    p.s = s1;
    auto a = compatibility_check(validated(p));
    p.s = s1 + 0.3;
    auto b = compatibility_check(validated(p));
    for (std::size_t l = 0; l < a.size(); ++l)
      if (a[l].required) CHECK(b[l].required);
  }
}

TEST_CASE("sampled data reject high derivatives") {
  std::vector<double> x{0, 0.1, 0.2, 0.3, 0.4, 0.5}, v{1, 1, 1, 1, 1, 1};
  auto u = DataHandle::sampled(x, v);
  CHECK_NOTHROW(u.derivative(3, 0.0));
  CHECK_THROWS_AS(u.derivative(4, 0.0), DomainError);
}

TEST_CASE("beta branches") {
  CHECK(beta(0, 3) == doctest::Approx(1.0 / 36).epsilon(1e-15));
  CHECK(beta(-0.25, 3) == doctest::Approx(1.0 / 384).epsilon(1e-15));
  CHECK_THROWS_AS(beta(-0.75, 3), DomainError);
  // third branch, m = 5: (s + 7/4)/160
  CHECK(beta(-1.0, 5) == doctest::Approx(0.75 / 160).epsilon(1e-15));
}

TEST_CASE("parameter_window") {
  auto w = parameter_window(0, 3);
  CHECK(w.b == doctest::Approx(17.0 / 36));
  CHECK(w.b1 == doctest::Approx(35.0 / 72));
  CHECK(w.alpha == doctest::Approx(37.0 / 72));
  CHECK(w.alpha1 == doctest::Approx(19.0 / 36));
  auto w2 = parameter_window(-0.25, 3);
  CHECK(w2.b == doctest::Approx(0.5 - 1.0 / 384));

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    int m = 3 + 2 * static_cast<int>(rng() % 4);
    double j = (m - 1) / 2;
    std::uniform_real_distribution<double> d(-j + 0.25 + 1e-6, 2.5);
    double s = d(rng);
    auto p = parameter_window(s, m);
    CHECK(p.beta > 0);
    CHECK(0.5 - p.beta <= p.b);
    CHECK(p.b < p.b1);
    CHECK(p.b1 < 0.5);
    CHECK(0.5 < p.alpha);
    CHECK(p.alpha < p.alpha1);
    CHECK(p.alpha1 <= 0.5 + p.beta);
  }
}

TEST_CASE("lifespan") {
  CHECK(lifespan(0, 3, 0.0) == doctest::Approx(0.5));
  CHECK(lifespan(0, 3, 1.0) < lifespan(0, 3, 0.1));
  CHECK(log_lifespan(0, 3, 1.0) == doctest::Approx(std::log(0.5) - 72 * std::log(65.0)).epsilon(1e-14));
  // smaller beta -> shorter lifespan
  CHECK(log_lifespan(-0.25, 3, 0.1) < log_lifespan(0, 3, 0.1));
}

TEST_CASE("sobolev norm of exp decay") {
  // ||e^{-x}||_{L2(0,inf)}^2 = 1/2; Plancherel on the truncated grid
  double n = sobolev_norm(DataHandle::builtin("exp_decay"), 0.0);
  CHECK(n == doctest::Approx(std::sqrt(0.5)).epsilon(2e-3));
  CHECK(sobolev_norm(DataHandle(), 1.0) == 0.0);
}
