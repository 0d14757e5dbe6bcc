#pragma once

#include <string>
#include <vector>

#include "utm/data.hpp"

namespace utm {

/// Initial-boundary value problem on the half-line:
///   u_t + (-1)^{j+1} d_x^m u + u u_x = f,  u(x,0) = u0,  d_x^l u(0,t) = g_l, l < j.
struct ProblemSpec {
  int m = 3;
  double T = 0.25;
  double s = 0.0;
  DataHandle u0;
  std::vector<DataHandle> g;
  ForcingHandle f;
  bool nonlinear = false;
};

struct ValidatedSpec {
  ProblemSpec spec;
  int j = 1;
  std::vector<std::string> warnings;
};

struct ValidationResult {
  bool ok = false;
  std::vector<std::string> errors;
  ValidatedSpec value;
};

/// Checks m odd >= 3, j boundary data, T in (0, 1/2) for the nonlinear path.
/// Flags (does not reject) s in {1/2, 3/2, ..., j - 1/2}.
ValidationResult validate_spec(const ProblemSpec& spec);
/// validate_spec, throwing ConfigError with all messages joined.
ValidatedSpec validated(const ProblemSpec& spec);

struct CompatibilityEntry {
  int ell;
  bool required;
  bool satisfied;
  double residual;
};

std::vector<CompatibilityEntry> compatibility_check(const ValidatedSpec& v, double tol = 1e-10);

double beta(double s, int m);

struct ParameterWindow {
  double s, beta, b, b1, alpha, alpha1;
};

ParameterWindow parameter_window(double s, int m);

/// (1/2) (1 + 64 c2^2 data_norm)^{-2/beta}.
double lifespan(double s, int m, double data_norm, double c2 = 1.0);
/// Natural log of lifespan(); finite even when the value underflows.
double log_lifespan(double s, int m, double data_norm, double c2 = 1.0);

/// Discrete H^s norm of a half-line handle: trapezoid rule for
/// (1+|xi|)^{2s} |u_hat(xi)|^2 / (2 pi) on |xi| <= xi_max.
double sobolev_norm(const DataHandle& u, double s, double xi_max = 200.0, int points = 4096,
                    double data_radius = 40.0);

/// Sum of the data norms used by lifespan(): ||u0||_{H^s} + sum_l ||g_l||_{H^{(s+j-l)/m}} (time data on [0,T]).
double data_norm(const ValidatedSpec& v);

}  // namespace utm
