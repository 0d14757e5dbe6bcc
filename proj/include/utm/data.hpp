#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "utm/quadrature.hpp"

namespace utm {

/// A real function of one variable: either a named analytic builtin or
/// samples with cubic Hermite interpolation (zero outside the sampled range).
class DataHandle {
 public:
  enum class Kind { builtin, sampled };

  /// The zero builtin.
  DataHandle();

  /// Throws ConfigError for unknown names or parameters (message lists the catalog).
  static DataHandle builtin(const std::string& name, const std::map<std::string, double>& params = {});
  static DataHandle sampled(std::vector<double> x, std::vector<double> v);
  static DataHandle zero() { return DataHandle(); }

  /// Names of the builtin catalog.
  static const std::vector<std::string>& catalog();
  /// Parameter names and defaults of a builtin.
  static const std::map<std::string, double>& defaults(const std::string& name);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }
  const std::vector<double>& sample_x() const { return sx_; }
  const std::vector<double>& sample_v() const { return sv_; }
  bool is_zero() const;

  double operator()(double x) const;
  /// Complex evaluation, builtins only.
  cd operator()(cd z) const;

  /// d^order/dx^order at x. Builtins use a Cauchy integral; sampled data
  /// support order <= 3 (DomainError otherwise).
  double derivative(int order, double x) const;
  int max_derivative_order() const;

  /// Piecewise-polynomial representation on [lo, hi]. Builtins are fitted with
  /// degree-7 pieces on the given breaks; sampled data return their interpolant
  /// (breaks ignored).
  PiecewisePoly to_poly(const std::vector<double>& breaks) const;

  /// Canonical text form, e.g. `builtin:gauss_bump(amp=1,center=3,width=0.5)`.
  std::string describe() const;

  /// a*u + b*v. Both builtins: kept analytic. Otherwise both must be sampled on the same abscissae.
  static DataHandle combine(double a, const DataHandle& u, double b, const DataHandle& v);

 private:
  Kind kind_ = Kind::builtin;
  std::string name_ = "zero";
  std::map<std::string, double> params_;
  std::function<cd(cd)> fn_;
  double scale_ = 1.0;  // analytic length scale (Cauchy radius)
  std::vector<double> sx_, sv_;
  std::shared_ptr<const PiecewisePoly> interp_;
};

/// Forcing f(x, tau).
class ForcingHandle {
 public:
  enum class Kind { zero, separable, sampled, callable };

  ForcingHandle() = default;
  static ForcingHandle separable(DataHandle space, DataHandle time);
  /// values[k * x.size() + i] = f(x[i], t[k]).
  static ForcingHandle sampled(std::vector<double> x, std::vector<double> t, std::vector<double> values);
  static ForcingHandle callable(std::function<double(double, double)> f);

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::zero; }
  double operator()(double x, double tau) const;

  const DataHandle& space() const { return space_; }
  const DataHandle& time() const { return time_; }
  const std::vector<double>& grid_x() const { return gx_; }
  const std::vector<double>& grid_t() const { return gt_; }
  const std::vector<double>& values() const { return gv_; }

 private:
  Kind kind_ = Kind::zero;
  DataHandle space_, time_;
  std::vector<double> gx_, gt_, gv_;
  std::function<double(double, double)> fn_;
};

}  // namespace utm
