#pragma once

#include <string>
#include <vector>

#include "utm/field.hpp"
#include "utm/problem.hpp"

namespace utm {

/// Finite-difference discretization on [0, L] with Nx intervals and Nt time steps over [0, T].
struct FDConfig {
  double L = 20.0;
  int Nx = 2000;
  int Nt = 1000;
  double theta = 0.5;  ///< implicitness weight of the dispersive term

  void validate(int m) const;
  bool operator==(const FDConfig&) const = default;
};

/// Theta-method for the linear part, second-order Adams-Bashforth for u u_x. The j data g_l
/// are imposed at x = 0 and u = d_x u = ... = d_x^j u = 0 at x = L. The result is interpolated
/// onto `out` (cubic in x, linear in t); L must be at least 2 max(out.x).
SolutionField solve_fd(const ValidatedSpec& spec, const FDConfig& fd, const Grid& out);

struct ConvergenceStudy {
  std::vector<double> diffs;   ///< ||u_{k+1} - u_k|| on the output grid
  std::vector<double> orders;  ///< log(diffs[k] / diffs[k+1]) / log(h_k / h_{k+1})
  bool exact = false;          ///< all solutions identical (zero data)
  bool degraded = false;       ///< final order below 1.5 or data incompatible
  std::string note;
};

/// Needs at least three configurations of increasing resolution.
ConvergenceStudy fd_convergence_study(const ValidatedSpec& spec, const std::vector<FDConfig>& fds, const Grid& out);

}  // namespace utm
