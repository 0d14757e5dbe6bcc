#include <doctest.h>

#include <cmath>
#include <numbers>

#include "utm/contour.hpp"
#include "utm/error.hpp"

using namespace utm;
constexpr double pi = std::numbers::pi;

TEST_CASE("rotation numbers") {
  auto a = rotation_numbers(3, 1);
  REQUIRE(a.size() == 2);
  CHECK(a[0] == std::exp(cd(0, 2 * pi / 3)));
  CHECK(a[1] == std::exp(cd(0, 4 * pi / 3)));
  auto b = rotation_numbers(5, 1);
  REQUIRE(b.size() == 3);
  for (int n = 0; n < 3; ++n) CHECK(std::abs(b[n] - std::exp(cd(0, (4 + 2 * n) * pi / 5))) < 1e-15);
  for (int m : {3, 5, 7, 9})
    for (int p = 1; p <= (m - 1) / 2; ++p)
      for (cd al : rotation_numbers(m, p)) {
        cd pw = 1.0;
        for (int k = 0; k < m; ++k) pw *= al;
        CHECK(std::abs(pw - 1.0) < 1e-14);
        CHECK(std::abs(std::abs(al) - 1.0) < 1e-15);
      }
  CHECK_THROWS_AS(rotation_numbers(3, 2), DomainError);
}

TEST_CASE("sector boundaries") {
  auto s = sector_boundary(3, 1);
  CHECK(s.right_ray.angle.radians() == doctest::Approx(pi / 3));
  CHECK(s.left_ray.angle.radians() == doctest::Approx(2 * pi / 3));
  CHECK(s.right_ray.direction == RayDirection::outward);
  CHECK(s.left_ray.direction == RayDirection::inward);
  auto s5 = sector_boundary(5, 2);
  CHECK(s5.right_ray.angle.radians() == doctest::Approx(3 * pi / 5));
  CHECK(s5.left_ray.angle.radians() == doctest::Approx(4 * pi / 5));
  for (int m : {3, 5, 7, 9})
    for (int p = 1; p <= (m - 1) / 2; ++p) {
      auto b = sector_boundary(m, p);
      CHECK(std::sin(b.right_ray.angle.radians()) > 0);
      CHECK(std::sin(b.left_ray.angle.radians()) > 0);
      CHECK(b.right_ray.angle.radians() < b.left_ray.angle.radians());
      // xi^m = -r^m on the right ray, +r^m on the left ray
      for (double r : {0.5, 1.0, 3.0}) {
        cd xr = std::pow(b.right_ray.point(r), m), xl = std::pow(b.left_ray.point(r), m);
        CHECK(std::abs(xr + std::pow(r, m)) < 1e-12 * std::pow(r, m));
        CHECK(std::abs(xl - std::pow(r, m)) < 1e-12 * std::pow(r, m));
      }
      // interior to the left of the outward right ray
      cd t = b.right_ray.tangent(), inside = b.bisector();
      CHECK((std::conj(t) * inside).imag() > 0);
    }
}

TEST_CASE("rotated contour stays in the closed lower half-plane") {
  for (int m : {3, 5, 7, 9})
    for (int p = 1; p <= (m - 1) / 2; ++p) {
      auto b = sector_boundary(m, p);
      for (cd al : rotation_numbers(m, p))
        for (double r : {0.1, 1.0, 60.0}) {
          CHECK((al * b.right_ray.point(r)).imag() <= 1e-12 * r);
          CHECK((al * b.left_ray.point(r)).imag() <= 1e-12 * r);
        }
    }
}

TEST_CASE("decay factor") {
  auto s = sector_boundary(3, 1);
  CHECK(decay_factor(s.right_ray, 5.0, 0.0) == 1.0);
  CHECK(decay_factor(s.right_ray, 1.0, 1.0) == doctest::Approx(std::exp(-std::sqrt(3.0) / 2)).epsilon(1e-14));
  CHECK(decay_factor(s.right_ray, 1.0, 1.0) == doctest::Approx(0.42062).epsilon(1e-5));
  CHECK(decay_factor(s.right_ray, 2.0, 1.0) < decay_factor(s.right_ray, 1.0, 1.0));
  CHECK(decay_factor(s.right_ray, 1.0, 2.0) < decay_factor(s.right_ray, 1.0, 1.0));
}
