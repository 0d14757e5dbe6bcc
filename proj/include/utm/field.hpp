#pragma once

#include <complex>
#include <string>
#include <vector>

#include "utm/transforms.hpp"

namespace utm {

struct Grid {
  std::vector<double> x;
  std::vector<double> t;
  static Grid uniform(double x0, double x1, int nx, double t0, double t1, int nt);
  bool is_uniform(double tol = 1e-9) const;
};

enum class Provenance { utm_linear, utm_picard, wholeline_oracle, reference_fd };
std::string to_string(Provenance p);

/// Complex samples on a rectangular grid; values[k * nx + i] = u(x_i, t_k).
struct SolutionField {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<cd> values;
  QuadratureConfig quad;
  Provenance provenance = Provenance::utm_linear;

  SolutionField() = default;
  SolutionField(const Grid& g, Provenance p);

  std::size_t nx() const { return x.size(); }
  std::size_t nt() const { return t.size(); }
  cd& at(std::size_t i, std::size_t k) { return values[k * x.size() + i]; }
  const cd& at(std::size_t i, std::size_t k) const { return values[k * x.size() + i]; }
  Grid grid() const { return {x, t}; }

  double max_abs() const;
  double max_imag() const;
};

/// Discrete L2 norm over the grid (trapezoid weights in x and t; plain sum along
/// a direction that has a single point).
double l2_norm(const SolutionField& f);
/// ||a - b|| / ||b|| on a common grid.
double relative_l2(const SolutionField& a, const SolutionField& b);
/// Restriction to x in [x0, x1], t in [t0, t1].
SolutionField restrict(const SolutionField& f, double x0, double x1, double t0, double t1);

}  // namespace utm
