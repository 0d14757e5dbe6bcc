#include "utm/contour.hpp"

#include <cmath>
#include <numbers>

#include "utm/error.hpp"

namespace utm {

namespace {

void check(int m, int p) {
  if (m < 3 || m % 2 == 0) throw DomainError("m must be an odd integer >= 3");
  const int j = (m - 1) / 2;
  if (p < 1 || p > j) throw DomainError("sector index p must lie in 1.." + std::to_string(j));
}

// exp(i k pi / m) with k reduced mod 2m so equal angles give bitwise-equal values
cd exact_unit(int k, int m) {
  k %= 2 * m;
  if (k < 0) k += 2 * m;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == 2 * m) return {-1.0, 0.0};
  if (2 * k == m) return {0.0, 1.0};
  if (2 * k == 3 * m) return {0.0, -1.0};
  const double th = std::numbers::pi * k / m;
  return {std::cos(th), std::sin(th)};
}

}  // namespace

double RationalAngle::radians() const { return std::numbers::pi * num / den; }

cd RationalAngle::unit() const { return exact_unit(num, den); }

std::vector<int> rotation_exponents(int m, int p) {
  check(m, p);
  const int j = (m - 1) / 2;
  std::vector<int> e;
  for (int n = 1; n <= j + 1; ++n) e.push_back(m - 2 * p - 1 + 2 * n);
  return e;
}

std::vector<cd> rotation_numbers(int m, int p) {
  std::vector<cd> a;
  for (int k : rotation_exponents(m, p)) a.push_back(exact_unit(k, m));
  return a;
}

SectorBoundary sector_boundary(int m, int p) {
  check(m, p);
  SectorBoundary s;
  s.m = m;
  s.p = p;
  s.right_ray = Ray{{2 * p - 1, m}, RayDirection::outward};
  s.left_ray = Ray{{2 * p, m}, RayDirection::inward};
  return s;
}

cd SectorBoundary::bisector() const { return std::polar(1.0, std::numbers::pi * (4 * p - 1) / (2.0 * m)); }

double decay_factor(const Ray& ray, double r, double x) {
  if (r < 0 || x < 0) throw DomainError("decay_factor: r and x must be nonnegative");
  return std::exp(-std::sin(ray.angle.radians()) * r * x);
}

}  // namespace utm
