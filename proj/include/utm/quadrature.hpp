#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace utm {

using cd = std::complex<double>;

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Cached n-point Gauss-Legendre rule (n >= 1).
const GaussRule& gauss_legendre(int n);

/// Finite-difference weights (Fornberg) for the `order`-th derivative at z
/// using the nodes xs. Returns one weight per node.
std::vector<double> fd_weights(double z, const std::vector<double>& xs, int order);

/// Piecewise polynomial. Piece k lives on [breaks[k], breaks[k+1]] and is stored
/// in the local variable y in [-1, 1] with monomial coefficients.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;

  /// Chebyshev interpolant of the given degree on every piece.
  static PiecewisePoly fit(const std::function<double(double)>& f, std::vector<double> breaks,
                           int degree);
  /// Cubic Hermite interpolant; nodal slopes from 5-point finite differences.
  static PiecewisePoly hermite(const std::vector<double>& x, const std::vector<double>& v);

  bool empty() const { return breaks_.size() < 2; }
  int degree() const { return deg_; }
  int pieces() const { return static_cast<int>(breaks_.size()) - 1; }
  const std::vector<double>& breaks() const { return breaks_; }
  double lo() const { return breaks_.front(); }
  double hi() const { return breaks_.back(); }
  bool uniform() const { return uniform_; }
  const double* coeffs(int k) const { return coef_.data() + static_cast<std::size_t>(k) * (deg_ + 1); }

  /// Value; zero outside [lo, hi].
  double operator()(double s) const;
  /// Derivative of the given order; zero outside [lo, hi].
  double derivative(int order, double s) const;
  /// Largest |value| at the breakpoints and piece midpoints.
  double max_abs() const;

  /// Integral of P(s) e^{-i omega s} over [a, b], clipped to [lo, hi].
  cd phase_integral(cd omega, double a, double b) const;
  /// out[k] = integral from lo to ts[k]; ts must be nondecreasing.
  void cumulative_phase_integral(cd omega, const std::vector<double>& ts, cd* out) const;
  /// Same as phase_integral over [lo, hi], batched over many omegas.
  std::vector<cd> phase_integral_batch(const std::vector<cd>& omegas) const;

 private:
  int locate(double s) const;
  cd piece_integral(int k, cd omega, double ya, double yb) const;

  std::vector<double> breaks_;
  int deg_ = 0;
  bool uniform_ = false;
  std::vector<double> coef_;
};

/// Cubic Hermite interpolation on fixed abscissae with 5-point finite-difference
/// slopes. Everything is linear in the sample values, so complex data work too.
class HermiteGrid {
 public:
  HermiteGrid() = default;
  explicit HermiteGrid(std::vector<double> x);

  const std::vector<double>& x() const { return x_; }
  int size() const { return static_cast<int>(x_.size()); }

  /// Nodal slopes s = D v.
  template <class T>
  void slopes(const T* v, T* s) const {
    const int n = size();
    for (int i = 0; i < n; ++i) {
      T acc = T(0);
      const int st = start_[i];
      for (int q = 0; q < width_; ++q) acc += wt_[static_cast<std::size_t>(i) * width_ + q] * v[st + q];
      s[i] = acc;
    }
  }
  /// Weights w with integral_{x0}^{xN} P_v(s) e^{-i omega s} ds = sum_i w_i v_i.
  void phase_weights(cd omega, cd* w) const;
  /// out[k] = integral_{x0}^{x_k} P_v(s) e^{-i omega s} ds.
  void cumulative(cd omega, const cd* v, cd* out) const;
  /// Integrals of the four Hermite basis functions of piece k against e^{-i omega s}:
  /// (value left, slope left * h, value right, slope right * h).
  void piece_basis(int k, cd omega, cd out[4]) const;

 private:
  std::vector<double> x_;
  std::vector<int> start_;
  std::vector<double> wt_;
  int width_ = 0;
};

/// Integral over [-1, 1] of p(y) e^{-i kappa y} where p has monomial coefficients c[0..deg].
/// `ea` and `eb` are the phase factors the caller wants attached to the endpoints
/// y = -1 and y = 1 (so the prefactor never overflows); `emid` is the factor at y = 0.
cd local_phase_integral(const double* c, int deg, cd kappa, cd ea, cd eb, cd emid);

}  // namespace utm
