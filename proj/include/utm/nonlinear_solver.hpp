#pragma once

#include <string>
#include <vector>

#include "utm/error.hpp"
#include "utm/linear_evaluator.hpp"

namespace utm {

struct PicardState {
  std::vector<SolutionField> iterates;
  /// ||u_{n+1} - u_n|| (discrete L2), one per step.
  std::vector<double> diff_norms;
  /// diff_norms[n] / diff_norms[n-1].
  std::vector<double> contraction_ratios;
  bool converged = false;
  std::vector<std::string> warnings;
};

/// Raised when the ratio stays >= 1 for three consecutive steps.
class NonContractionError : public NumericalError {
 public:
  NonContractionError(const std::string& what, std::vector<double> ratios)
      : NumericalError(what), ratios_(std::move(ratios)) {}
  const std::vector<double>& ratios() const { return ratios_; }

 private:
  std::vector<double> ratios_;
};

struct PicardResult {
  SolutionField field;
  PicardState state;
};

/// Iterates u <- S[u0, g; f - (1/2) d_x(u^2)] from the linear solution. grid.t must start at 0.
/// Keeps every iterate when keep_iterates is set, otherwise only the last.
PicardResult picard_solve(const ValidatedSpec& spec, const UTMConstants& constants, const Grid& grid,
                          const QuadratureConfig& q = {}, int max_iter = 25, double tol = 1e-8,
                          bool keep_iterates = true);

/// -(1/2) d_x(Re u^2) on the field's grid, centered second order with one-sided ends.
ForcingHandle burgers_forcing(const SolutionField& u);

struct ContractionReport {
  bool sufficient = false;  ///< false with fewer than two differences
  double rate = 0.0;        ///< least-squares geometric rate of diff_norms
  std::vector<double> ratios;
  bool converged = false;
  bool diverging = false;  ///< rate > 1
  std::string note;
};

ContractionReport contraction_report(const PicardState& state);
ContractionReport contraction_report(const std::vector<double>& diff_norms, bool converged = false);

/// Discrete L2 norm of d_t u + (-1)^{j+1} d_x^m u + u d_x u over interior points, divided by
/// max(1, max|u|). Needs uniform axes with at least m + 3 points in x and 3 in t.
double pde_residual(const SolutionField& field, int m);

}  // namespace utm
