#pragma once

#include <complex>
#include <vector>

namespace utm {

using cd = std::complex<double>;

/// Angle stored as the rational multiple num/den of pi.
struct RationalAngle {
  int num = 0;
  int den = 1;
  double radians() const;
  cd unit() const;
};

enum class RayDirection { outward, inward };

struct Ray {
  RationalAngle angle;
  RayDirection direction = RayDirection::outward;
  cd point(double r) const { return r * angle.unit(); }
  /// d xi / dr including the traversal sign.
  cd tangent() const { return direction == RayDirection::outward ? angle.unit() : -angle.unit(); }
};

/// Boundary of the sector (2p-1)pi/m < arg xi < 2p pi/m, positively oriented:
/// right ray outward, left ray inward.
struct SectorBoundary {
  int m = 3;
  int p = 1;
  Ray right_ray;
  Ray left_ray;
  /// Unit vector along the bisector.
  cd bisector() const;
};

/// alpha_{p,n} = exp(i (m - 2p - 1 + 2n) pi / m), n = 1..j+1.
std::vector<cd> rotation_numbers(int m, int p);
/// Exponents num such that alpha_{p,n} = exp(i num pi / m).
std::vector<int> rotation_exponents(int m, int p);

SectorBoundary sector_boundary(int m, int p);

/// |exp(i xi x)| for xi = r e^{i angle}: exp(-sin(angle) r x).
double decay_factor(const Ray& ray, double r, double x);

}  // namespace utm
