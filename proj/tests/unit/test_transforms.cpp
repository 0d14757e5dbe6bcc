#include <doctest.h>

#include <cmath>

#include "utm/error.hpp"
#include "utm/transforms.hpp"

using namespace utm;

namespace {

DataHandle expd() { return DataHandle::builtin("exp_decay", {}); }

}  // namespace

TEST_CASE("half-line transform of exp decay") {
  // closed form 1/(1 + i zeta)
  CHECK(std::abs(halfline_fourier(expd(), 0.0) - 1.0) < 1e-10);
  CHECK(std::abs(halfline_fourier(expd(), cd(0, -1)) - 0.5) < 1e-10);
  for (cd z : {cd(3.0, 0.0), cd(-17.5, -2.0), cd(250.0, -0.5)}) {
    cd exact = 1.0 / (1.0 + cd(0, 1) * z);
    CHECK(std::abs(halfline_fourier(expd(), z) - exact) < 1e-9 * std::abs(exact) + 1e-14);
  }
  CHECK(halfline_fourier(DataHandle::builtin("zero", {}), cd(2.0, -1.0)) == cd(0.0));
}

TEST_CASE("half-line transform rejects the upper half-plane") {
  CHECK_THROWS_AS(halfline_fourier(expd(), cd(1.0, 1e-6)), DomainError);
  CHECK_NOTHROW(halfline_fourier(expd(), cd(1.0, 0.5e-12)));
}

TEST_CASE("slowly decaying data trip the tail check") {
  auto slow = DataHandle::builtin("exp_decay", {{"rate", 0.05}});
  CHECK_THROWS_AS(halfline_fourier(slow, 1.0), AccuracyError);
}

TEST_CASE("conjugate symmetry for real data") {
  auto u = DataHandle::builtin("x_exp", {{"rate", 2.0}});
  for (cd z : {cd(1.3, -0.2), cd(-40.0, 0.0), cd(7.0, -3.0)}) {
    cd a = halfline_fourier(u, z), b = halfline_fourier(u, -std::conj(z));
    CHECK(std::abs(a - std::conj(b)) < 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("temporal transform examples") {
  auto one = DataHandle::builtin("constant", {});
  CHECK(std::abs(temporal_transform(one, 0.0, 0.3) - 0.3) < 1e-14);
  for (double w : {0.7, 55.0, -3000.0}) {
    cd exact = (1.0 - std::exp(cd(0, -w * 0.9))) / (cd(0, 1) * w);
    CHECK(std::abs(temporal_transform(one, w, 0.9) - exact) < 1e-12);
  }
  CHECK(std::abs(temporal_transform(DataHandle::builtin("linear", {}), 0.0, 1.0) - 0.5) < 1e-14);
}

TEST_CASE("forcing transform examples and factorization") {
  CHECK(forcing_transform(ForcingHandle(), cd(1.0, -1.0), 0.5, 3) == cd(0.0));
  auto one = DataHandle::builtin("constant", {});
  auto f = ForcingHandle::separable(expd(), one);
  CHECK(std::abs(forcing_transform(f, 0.0, 0.2, 3) - 0.2) < 1e-10);

  auto g = DataHandle::builtin("sin_wave", {{"freq", 3.0}});
  auto fs = ForcingHandle::separable(expd(), g);
  auto fc = ForcingHandle::callable([&](double x, double t) { return std::exp(-x) * g(t); });
  for (cd z : {cd(0.4, -0.1), cd(-2.0, 0.0), cd(1.5, -1.5)}) {
    cd fact = halfline_fourier(expd(), z) * temporal_transform(g, z * z * z, 0.7);
    CHECK(std::abs(forcing_transform(fs, z, 0.7, 3) - fact) < 1e-8 * std::abs(fact));
    CHECK(std::abs(forcing_transform(fc, z, 0.7, 3) - fact) < 1e-7 * std::abs(fact));
  }
}

TEST_CASE("transforms are linear in the data") {
  auto u = DataHandle::builtin("x_exp", {}), v = DataHandle::builtin("gauss_bump", {{"center", 2.0}});
  auto w = DataHandle::combine(2.0, u, -0.5, v);
  for (cd z : {cd(0.3, 0.0), cd(-9.0, -1.0)}) {
    cd lhs = halfline_fourier(w, z);
    cd rhs = 2.0 * halfline_fourier(u, z) - 0.5 * halfline_fourier(v, z);
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("panel refinement moves results by less than 4 rel_tol") {
  QuadratureConfig a, b;
  b.panels = 2 * a.panels;
  for (const auto& u : {expd(), DataHandle::builtin("x_exp", {}),
                        DataHandle::builtin("gauss_bump", {{"center", 4.0}, {"width", 0.5}})}) {
    for (cd z : {cd(0.0, 0.0), cd(12.0, 0.0), cd(-30.0, -4.0)}) {
      cd r1 = halfline_fourier(u, z, a), r2 = halfline_fourier(u, z, b);
      CHECK(std::abs(r1 - r2) <= 4.0 * a.rel_tol * std::max(std::abs(r2), 1e-3));
    }
  }
}

TEST_CASE("dense rule agrees with the filon rule where it applies") {
  QuadratureConfig d;
  d.oscillatory_rule = OscillatoryRule::dense_trapezoid;
  auto u = DataHandle::builtin("x_exp", {});
  cd a = halfline_fourier(u, 2.0, d), b = halfline_fourier(u, 2.0);
  // trapezoid error is O(h^2) with h = 40/512
  CHECK(std::abs(a - b) < 5e-5);
}

TEST_CASE("batch transform matches pointwise calls") {
  auto u = DataHandle::builtin("gauss_bump", {{"center", 3.0}, {"width", 0.4}});
  std::vector<cd> zs = {0.0, cd(5.0, -0.1), cd(-70.0, 0.0), cd(0.5, -6.0)};
  auto b = halfline_fourier_batch(u, zs, {});
  for (std::size_t i = 0; i < zs.size(); ++i)
    CHECK(std::abs(b[i] - halfline_fourier(u, zs[i])) < 1e-12 * std::max(1.0, std::abs(b[i])));
}
