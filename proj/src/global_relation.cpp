#include "utm/global_relation.hpp"

#include <cmath>
#include <numbers>

#include "utm/contour.hpp"
#include "utm/error.hpp"

namespace utm {

namespace {

constexpr double kMaxCondition = 1e8;

cd ipow(cd z, int k) {
  cd r = 1.0;
  for (int q = 0; q < k; ++q) r *= z;
  return r;
}

double sign_j(int j) { return (j + 1) % 2 == 0 ? 1.0 : -1.0; }

// Solves the xi-dependent system for sector p and returns the coefficients of
// U_n = [u0^ + F](alpha_n xi) and K_d = g~_d in the boundary integrand, 1/(2 pi) included.
void eliminate_at(int m, int p, cd xi, std::vector<cd>& cu, std::vector<cd>& ck) {
  const int j = (m - 1) / 2;
  const double sg = sign_j(j);
  auto al = rotation_numbers(m, p);
  const cd I(0.0, 1.0);
  Eigen::MatrixXcd A(j + 1, j + 1);
  for (int n = 0; n <= j; ++n)
    for (int l = 0; l <= j; ++l) A(n, l) = sg * ipow(I * al[n] * xi, l);
  // boundary integrand = sg * [sum_l (i xi)^l G_l + sum_{k>j} (i xi)^k K_{2j-k}], G = A^{-1} R
  Eigen::RowVectorXcd row(j + 1);
  for (int l = 0; l <= j; ++l) row(l) = sg * ipow(I * xi, l);
  Eigen::RowVectorXcd w = A.transpose().fullPivLu().solve(row.transpose()).transpose();
  const double s = 1.0 / (2.0 * std::numbers::pi);
  cu.assign(j + 1, 0.0);
  ck.assign(j, 0.0);
  for (int n = 0; n <= j; ++n) cu[n] = -w(n) * s;
  for (int d = 0; d < j; ++d) {
    const int k = 2 * j - d;
    cd v = sg * ipow(I * xi, k);
    for (int n = 0; n <= j; ++n) v -= w(n) * sg * ipow(I * al[n] * xi, k);
    ck[d] = v * s;
  }
}

}  // namespace

EliminationSystem assemble_system(int m, int p) {
  EliminationSystem S;
  S.m = m;
  S.p = p;
  S.j = (m - 1) / 2;
  S.alpha = rotation_numbers(m, p);
  const int j = S.j;
  const double sg = sign_j(j);
  S.matrix.resize(j + 1, j + 1);
  S.known_coeff.resize(j + 1, j);
  for (int n = 0; n <= j; ++n) {
    for (int l = 0; l <= j; ++l) S.matrix(n, l) = sg * ipow(S.alpha[n], l);
    for (int k = j + 1; k <= 2 * j; ++k) S.known_coeff(n, k - j - 1) = -sg * ipow(S.alpha[n], k);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S.matrix);
  const auto& sv = svd.singularValues();
  S.condition_number = sv(0) / sv(sv.size() - 1);
  S.determinant = S.matrix.determinant();
  return S;
}

UTMConstants solve_constants(int m) {
  if (m < 3 || m % 2 == 0) throw DomainError("m must be an odd integer >= 3");
  UTMConstants c;
  c.m = m;
  c.j = (m - 1) / 2;
  const int j = c.j;
  const double s = 1.0 / (2.0 * std::numbers::pi);
  const double sg = sign_j(j);
  for (int p = 1; p <= j; ++p) {
    auto S = assemble_system(m, p);
    if (!(S.condition_number < kMaxCondition))
      throw NumericalError("elimination system for m=" + std::to_string(m) + ", p=" + std::to_string(p) +
                           " is ill-conditioned (cond = " + std::to_string(S.condition_number) + ")");
    // y^T = 1^T M^{-1} scaled by the sign carried in M
    Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(j + 1);
    Eigen::VectorXcd w = S.matrix.transpose().fullPivLu().solve(sg * ones);
    std::vector<cd> Cp(j + 1), Cq(j);
    for (int n = 0; n <= j; ++n) Cp[n] = S.transform_coeff * w(n) * s;
    for (int d = 0; d < j; ++d) {
      cd v = sg;
      for (int n = 0; n <= j; ++n) v += w(n) * S.known_coeff(n, j - 1 - d);
      Cq[d] = v * s;
    }
    c.C.push_back(Cp);
    c.Cprime.push_back(Cq);
    c.condition_numbers.push_back(S.condition_number);
  }
  for (cd xi : default_samples(m)) {
    auto other = constants_at(m, xi);
    for (int p = 0; p < j; ++p) {
      for (int n = 0; n <= j; ++n)
        if (std::abs(other.C[p][n] - c.C[p][n]) > 1e-10) throw NumericalError("constants depend on xi");
      for (int d = 0; d < j; ++d)
        if (std::abs(other.Cprime[p][d] - c.Cprime[p][d]) > 1e-10) throw NumericalError("constants depend on xi");
    }
  }
  return c;
}

UTMConstants constants_at(int m, cd xi) {
  UTMConstants c;
  c.m = m;
  c.j = (m - 1) / 2;
  const cd I(0.0, 1.0);
  for (int p = 1; p <= c.j; ++p) {
    std::vector<cd> cu, ck;
    eliminate_at(m, p, xi, cu, ck);
    for (int d = 0; d < c.j; ++d) ck[d] /= ipow(I * xi, 2 * c.j - d);
    c.C.push_back(cu);
    c.Cprime.push_back(ck);
  }
  return c;
}

double residual_check(const UTMConstants& c, const std::vector<cd>& xis) {
  const int m = c.m, j = c.j;
  const cd I(0.0, 1.0);
  double worst = 0.0;
  for (cd xi : xis) {
    for (int p = 1; p <= j; ++p) {
      std::vector<cd> cu, ck;
      eliminate_at(m, p, xi, cu, ck);
      for (int n = 0; n <= j; ++n) worst = std::max(worst, std::abs(cu[n] - c.C[p - 1][n]));
      for (int d = 0; d < j; ++d) {
        const cd scale = ipow(I * xi, 2 * j - d);
        worst = std::max(worst, std::abs(ck[d] - c.Cprime[p - 1][d] * scale) / std::abs(scale));
      }
    }
  }
  return worst;
}

std::vector<cd> default_samples(int m) {
  return {cd(1.0, 0.0), 2.0 * std::polar(1.0, std::numbers::pi / (2.0 * m))};
}

}  // namespace utm
