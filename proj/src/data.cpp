#include "utm/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "utm/error.hpp"

namespace utm {

namespace {

using Params = std::map<std::string, double>;

struct BuiltinDef {
  Params defaults;
  // returns the function and a length scale used for Cauchy derivatives
  std::function<std::pair<std::function<cd(cd)>, double>(const Params&)> make;
};

const std::map<std::string, BuiltinDef>& registry() {
  static const std::map<std::string, BuiltinDef> reg = [] {
    std::map<std::string, BuiltinDef> r;
    r["zero"] = {{}, [](const Params&) { return std::make_pair(std::function<cd(cd)>([](cd) { return cd(0.0); }), 1.0); }};
    r["constant"] = {{{"value", 1.0}}, [](const Params& p) {
                       double v = p.at("value");
                       return std::make_pair(std::function<cd(cd)>([v](cd) { return cd(v); }), 1.0);
                     }};
    r["linear"] = {{{"a", 0.0}, {"b", 1.0}}, [](const Params& p) {
                     double a = p.at("a"), b = p.at("b");
                     return std::make_pair(std::function<cd(cd)>([a, b](cd z) { return a + b * z; }), 1.0);
                   }};
    r["exp_decay"] = {{{"amp", 1.0}, {"rate", 1.0}}, [](const Params& p) {
                        double a = p.at("amp"), k = p.at("rate");
                        if (!(k > 0)) throw ConfigError("exp_decay: rate must be positive");
                        return std::make_pair(std::function<cd(cd)>([a, k](cd z) { return a * std::exp(-k * z); }),
                                              1.0 / k);
                      }};
    r["x_exp"] = {{{"amp", 1.0}, {"rate", 1.0}}, [](const Params& p) {
                    double a = p.at("amp"), k = p.at("rate");
                    if (!(k > 0)) throw ConfigError("x_exp: rate must be positive");
                    return std::make_pair(std::function<cd(cd)>([a, k](cd z) { return a * z * std::exp(-k * z); }),
                                          1.0 / k);
                  }};
    r["gauss_bump"] = {{{"amp", 1.0}, {"center", 0.0}, {"width", 1.0}}, [](const Params& p) {
                         double a = p.at("amp"), c = p.at("center"), w = p.at("width");
                         if (!(w > 0)) throw ConfigError("gauss_bump: width must be positive");
                         return std::make_pair(std::function<cd(cd)>([a, c, w](cd z) {
                                                 cd d = (z - c) / w;
                                                 return a * std::exp(-0.5 * d * d);
                                               }),
                                               w);
                       }};
    r["sin2_pulse"] = {{{"amp", 1.0}, {"period", 1.0}}, [](const Params& p) {
                         double a = p.at("amp"), P = p.at("period");
                         if (!(P > 0)) throw ConfigError("sin2_pulse: period must be positive");
                         return std::make_pair(std::function<cd(cd)>([a, P](cd z) {
                                                 cd s = std::sin(std::numbers::pi * z / P);
                                                 return a * s * s;
                                               }),
                                               P / 4.0);
                       }};
    r["sin_wave"] = {{{"amp", 1.0}, {"freq", 1.0}, {"phase", 0.0}}, [](const Params& p) {
                       double a = p.at("amp"), f = p.at("freq"), ph = p.at("phase");
                       double scale = f != 0.0 ? 1.0 / std::abs(f) : 1.0;
                       return std::make_pair(std::function<cd(cd)>([a, f, ph](cd z) { return a * std::sin(f * z + ph); }),
                                             scale);
                     }};
    return r;
  }();
  return reg;
}

std::string format_double(double v) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

DataHandle::DataHandle() : fn_([](cd) { return cd(0.0); }) { params_ = {}; }

const std::vector<std::string>& DataHandle::catalog() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

const std::map<std::string, double>& DataHandle::defaults(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) {
    std::string msg = "unknown builtin '" + name + "'; catalog:";
    for (const auto& n : catalog()) msg += " " + n;
    throw ConfigError(msg);
  }
  return it->second.defaults;
}

DataHandle DataHandle::builtin(const std::string& name, const std::map<std::string, double>& params) {
  const auto& defs = defaults(name);
  Params p = defs;
  for (const auto& [k, v] : params) {
    if (!defs.count(k)) {
      std::string msg = "builtin '" + name + "' has no parameter '" + k + "'; parameters:";
      for (const auto& d : defs) msg += " " + d.first;
      throw ConfigError(msg);
    }
    if (!std::isfinite(v)) throw ConfigError("builtin '" + name + "': parameter '" + k + "' is not finite");
    p[k] = v;
  }
  DataHandle h;
  h.kind_ = Kind::builtin;
  h.name_ = name;
  h.params_ = p;
  auto [fn, scale] = registry().at(name).make(p);
  h.fn_ = fn;
  h.scale_ = scale;
  return h;
}

DataHandle DataHandle::sampled(std::vector<double> x, std::vector<double> v) {
  DataHandle h;
  h.kind_ = Kind::sampled;
  h.name_ = "sampled";
  h.interp_ = std::make_shared<PiecewisePoly>(PiecewisePoly::hermite(x, v));
  h.sx_ = std::move(x);
  h.sv_ = std::move(v);
  h.fn_ = nullptr;
  return h;
}

bool DataHandle::is_zero() const {
  if (kind_ == Kind::builtin) {
    if (name_ == "zero") return true;
    auto a = params_.find("amp");
    if (a != params_.end() && a->second == 0.0) return true;
    if (name_ == "constant" && params_.at("value") == 0.0) return true;
    if (name_ == "linear" && params_.at("a") == 0.0 && params_.at("b") == 0.0) return true;
    return false;
  }
  return std::all_of(sv_.begin(), sv_.end(), [](double v) { return v == 0.0; });
}

double DataHandle::operator()(double x) const {
  if (kind_ == Kind::sampled) return (*interp_)(x);
  return fn_(cd(x, 0.0)).real();
}

cd DataHandle::operator()(cd z) const {
  if (kind_ == Kind::sampled) {
    if (z.imag() != 0.0) throw DomainError("sampled data cannot be evaluated at complex arguments");
    return (*interp_)(z.real());
  }
  return fn_(z);
}

int DataHandle::max_derivative_order() const { return kind_ == Kind::sampled ? 3 : 64; }

double DataHandle::derivative(int order, double x) const {
  if (order < 0) throw DomainError("negative derivative order");
  if (order > max_derivative_order())
    throw DomainError("derivative of order " + std::to_string(order) + " unavailable for " +
                      (kind_ == Kind::sampled ? std::string("sampled-grid data (cubic interpolation)") : name_));
  if (kind_ == Kind::sampled) {
    // one-sided at the left end of the range
    double xx = std::clamp(x, interp_->lo(), interp_->hi());
    return interp_->derivative(order, xx);
  }
  if (order == 0) return (*this)(x);
  const double rho = 0.25 * std::min(1.0, scale_);
  const int N = 64;
  cd acc = 0.0;
  for (int n = 0; n < N; ++n) {
    const double th = 2.0 * std::numbers::pi * n / N;
    const cd e = std::polar(1.0, th);
    acc += fn_(x + rho * e) * std::polar(1.0, -order * th);
  }
  double fact = 1.0;
  for (int k = 2; k <= order; ++k) fact *= k;
  return (acc.real() / N) * fact / std::pow(rho, order);
}

PiecewisePoly DataHandle::to_poly(const std::vector<double>& breaks) const {
  if (kind_ == Kind::sampled) return *interp_;
  auto f = fn_;
  return PiecewisePoly::fit([f](double s) { return f(cd(s, 0.0)).real(); }, breaks, 7);
}

std::string DataHandle::describe() const {
  if (kind_ == Kind::sampled) return "sampled(" + std::to_string(sx_.size()) + " points)";
  if (name_ == "combination") return "combination";
  std::string s = "builtin:" + name_ + "(";
  bool first = true;
  for (const auto& [k, v] : params_) {
    if (!first) s += ", ";
    first = false;
    s += k + "=" + format_double(v);
  }
  return s + ")";
}

DataHandle DataHandle::combine(double a, const DataHandle& u, double b, const DataHandle& v) {
  if (u.kind_ == Kind::builtin && v.kind_ == Kind::builtin) {
    DataHandle h;
    h.kind_ = Kind::builtin;
    h.name_ = "combination";
    auto fu = u.fn_, fv = v.fn_;
    h.fn_ = [a, b, fu, fv](cd z) { return a * fu(z) + b * fv(z); };
    h.scale_ = std::min(u.scale_, v.scale_);
    return h;
  }
  if (u.kind_ == Kind::sampled && v.kind_ == Kind::sampled && u.sx_ == v.sx_) {
    std::vector<double> w(u.sv_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = a * u.sv_[i] + b * v.sv_[i];
    return sampled(u.sx_, w);
  }
  throw DomainError("combine: handles must both be builtin or sampled on the same abscissae");
}

ForcingHandle ForcingHandle::separable(DataHandle space, DataHandle time) {
  ForcingHandle f;
  if (space.is_zero() || time.is_zero()) return f;
  f.kind_ = Kind::separable;
  f.space_ = std::move(space);
  f.time_ = std::move(time);
  return f;
}

ForcingHandle ForcingHandle::sampled(std::vector<double> x, std::vector<double> t, std::vector<double> values) {
  if (values.size() != x.size() * t.size())
    throw DomainError("sampled forcing: values must have x.size()*t.size() entries");
  if (x.size() < 2 || t.size() < 2) throw DomainError("sampled forcing: need at least 2x2 samples");
  ForcingHandle f;
  f.kind_ = Kind::sampled;
  f.gx_ = std::move(x);
  f.gt_ = std::move(t);
  f.gv_ = std::move(values);
  return f;
}

ForcingHandle ForcingHandle::callable(std::function<double(double, double)> fn) {
  ForcingHandle f;
  f.kind_ = Kind::callable;
  f.fn_ = std::move(fn);
  return f;
}

double ForcingHandle::operator()(double x, double tau) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::separable:
      return space_(x) * time_(tau);
    case Kind::callable:
      return fn_(x, tau);
    case Kind::sampled: {
      // bilinear lookup; transforms use the Hermite representation instead
      if (x < gx_.front() || x > gx_.back() || tau < gt_.front() || tau > gt_.back()) return 0.0;
      auto ix = std::clamp<long>(std::upper_bound(gx_.begin(), gx_.end(), x) - gx_.begin() - 1, 0, gx_.size() - 2);
      auto it = std::clamp<long>(std::upper_bound(gt_.begin(), gt_.end(), tau) - gt_.begin() - 1, 0, gt_.size() - 2);
      double ax = (x - gx_[ix]) / (gx_[ix + 1] - gx_[ix]), at = (tau - gt_[it]) / (gt_[it + 1] - gt_[it]);
      const std::size_t nx = gx_.size();
      auto v = [&](long k, long i) { return gv_[k * nx + i]; };
      return (1 - at) * ((1 - ax) * v(it, ix) + ax * v(it, ix + 1)) + at * ((1 - ax) * v(it + 1, ix) + ax * v(it + 1, ix + 1));
    }
  }
  return 0.0;
}

}  // namespace utm
