#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace utm {

using cd = std::complex<double>;

/// Linear system for one sector p. Unknowns X_l = (i xi)^l g~_{2j-l}, l = 0..j;
/// row n is the global relation at alpha_{p,n} xi. The xi powers factor out,
/// so matrix(n, l) = (-1)^{j+1} alpha_n^l.
struct EliminationSystem {
  int m = 3;
  int j = 1;
  int p = 1;
  std::vector<cd> alpha;
  Eigen::MatrixXcd matrix;
  /// rhs_n = unknown_coeff * [u0^ + F](alpha_n xi) + sum_k known_coeff(n, k - j - 1) (i xi)^k g~_{2j-k}, k = j+1..2j.
  cd transform_coeff = -1.0;
  Eigen::MatrixXcd known_coeff;
  double condition_number = 0.0;
  cd determinant;
};

/// Constants of the solution formula, 1/(2 pi) included.
/// C[p-1][n-1] multiplies [u0^ + F](alpha_{p,n} xi); Cprime[p-1][l] multiplies (i xi)^{2j-l} g~_l.
struct UTMConstants {
  int m = 3;
  int j = 1;
  std::vector<std::vector<cd>> C;
  std::vector<std::vector<cd>> Cprime;
  std::vector<double> condition_numbers;
};

EliminationSystem assemble_system(int m, int p);

/// Solves every sector's system. Throws NumericalError if a condition number exceeds 1e8
/// or the xi-independence check fails.
UTMConstants solve_constants(int m);

/// Constants re-derived from the unscaled system at a particular xi (dividing the xi powers out).
UTMConstants constants_at(int m, cd xi);

/// Max over sectors, samples and unit data vectors of the mismatch between the
/// direct elimination at xi and the formula built from `c`. Boundary columns are
/// normalized by |(i xi)^{2j-l}|.
double residual_check(const UTMConstants& c, const std::vector<cd>& xis);

/// Default sample set: xi = 1 and xi = 2 e^{i pi/(2m)}.
std::vector<cd> default_samples(int m);

}  // namespace utm
