#pragma once

#include <complex>
#include <vector>

#include "utm/data.hpp"

namespace utm {

enum class OscillatoryRule { dense_trapezoid, filon_linear_phase };

/// Quadrature knobs shared by the transforms and the contour evaluator.
struct QuadratureConfig {
  // spatial/temporal transforms
  double truncation_radius = 40.0;  ///< spatial cut for half-line integrals
  int panels = 512;                 ///< pieces on [0, truncation_radius] and per unit time
  OscillatoryRule oscillatory_rule = OscillatoryRule::filon_linear_phase;
  double rel_tol = 1e-8;
  int time_subpanels = 4;  ///< pieces between consecutive output times (builtin time data)

  // spectral contours
  double contour_radius = 60.0;
  int contour_panels = 2048;  ///< per ray and per half of the real line
  int gauss_order = 4;
  int pole_terms = 4;          ///< terms of the pole expansion used for the 1/xi tails
  double model_shift = 1.0;    ///< pole of the asymptotic initial-data model at -i*shift
  int model_terms = 8;         ///< terms of that model (capped by the data's derivative order)

  /// Throws ConfigError if out of range.
  void validate() const;
  bool operator==(const QuadratureConfig&) const = default;
};

/// Imaginary-part slack for arguments on the real axis.
inline constexpr double kImagSlack = 1e-12;

/// integral_0^inf e^{-i zeta x} u(x) dx, Im zeta <= slack.
cd halfline_fourier(const DataHandle& u, cd zeta, const QuadratureConfig& q = {});

/// integral_0^t e^{-i omega tau} g(tau) dtau.
cd temporal_transform(const DataHandle& g, cd omega, double t, const QuadratureConfig& q = {});

/// integral_0^t e^{-i zeta^m tau} [integral_0^inf e^{-i zeta x} f(x,tau) dx] dtau, as a
/// temporal quadrature of half-line transforms of slices.
cd forcing_transform(const ForcingHandle& f, cd zeta, double t, int m, const QuadratureConfig& q = {});

/// Piecewise representation of half-line data on [0, truncation_radius] used by the batch paths.
PiecewisePoly halfline_poly(const DataHandle& u, const QuadratureConfig& q);
/// Breaks on [0, max(times)] containing every time in `times`, subdivided `sub` times.
std::vector<double> time_breaks(const std::vector<double>& times, int sub);

/// Batch half-line transform at many zetas; checks the truncation tail once.
std::vector<cd> halfline_fourier_batch(const DataHandle& u, const std::vector<cd>& zetas, const QuadratureConfig& q);

}  // namespace utm
