#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "utm/field.hpp"

namespace utm {

/// Result of one sampling audit. `value` is the empirical sup (inf for the d_m bound).
struct AuditReport {
  std::string inequality_id;
  std::map<std::string, double> parameters;
  int samples = 0;
  double value = 0.0;
  std::vector<double> worst_location;
  /// |value(4x samples, 2x radius) - value| / |value|.
  double stability_delta = 0.0;
  /// Slope of log(value) against log(radius) over a radius sweep (0 when not swept).
  double growth_exponent = 0.0;
  bool growth_flagged = false;
  bool bounded = false;
  std::uint64_t seed = 0;
  std::string note;
};

/// Options shared by the sampling audits.
struct AuditOptions {
  int samples = 2000;
  std::uint64_t seed = 20240601;
  double radius = 1.0;       ///< multiplies every sampling range
  bool stability = true;     ///< rerun with 4x samples and 2x radius
  bool sweep = false;        ///< fit the growth exponent over radii 1, 2, 4, 8
  double stable_tol = 0.25;  ///< relative change accepted as stable
};

// --- d_m ----------------------------------------------------------------------------------

/// -xi1^m + xi^m - (xi - xi1)^m, summed in binomial form without cancellation of the top terms.
double dm(int m, double xi, double xi1);

enum class DmWeight { xi, xi1 };

/// |d_m| / (|w|^{m-3} |xi xi1 (xi - xi1)|) with w = xi or xi1; exact factorized form.
double dm_ratio(int m, double xi, double xi1, DmWeight w);

/// Empirical c_m = inf of dm_ratio over |xi|, |xi1|, |xi - xi1| >= 1 (log-uniform up to 1e6 radius).
AuditReport audit_dm_bound(int m, DmWeight w, const AuditOptions& opt = {});

// --- one-dimensional calculus inequalities -------------------------------------------------

/// Integral over the real line of f, split at `kinks`, with f ~ |x|^{-decay} at infinity (decay > 1).
double line_integral(const std::function<double(double)>& f, std::vector<double> kinks, double decay);

/// Integral over [lo, hi] split at the kinks inside; endpoint and kink singularities of power type allowed.
double interval_integral(const std::function<double(double)>& f, double lo, double hi, std::vector<double> kinks);

/// lhs / rhs of the calculus inequality `which` (1..5) at one parameter point.
/// l2 is the second exponent where the inequality has one (3 and 5), c the interval half-width for 4.
double calc_ratio(int which, double l, double l2, double a, double c);

/// Sup of calc_ratio over seeded parameter samples drawn from the inequality's range
/// (kept 0.05 away from open endpoints), with |a - c| up to 1e6 * radius.
AuditReport audit_calc_inequality(int which, const AuditOptions& opt = {});

// --- multiplier audits ---------------------------------------------------------------------

struct ThetaParams {
  int m = 3;
  double b = 0.45;
  double b1 = 0.45;      ///< b'
  double alpha1 = 0.55;  ///< alpha'
};

/// Theta_4 at (xi, tau); zero when |xi| > 2.
double theta4(const ThetaParams& p, double xi, double tau);
AuditReport audit_theta4(const ThetaParams& p, const AuditOptions& opt = {});

/// Theta_2, Theta_5 at (xi, tau) and Theta_3, Theta_6 at (xi1, tau1). Arguments are the frequency and
/// the modulation tau - xi^m (tau1 - xi1^m), which keeps large frequencies free of cancellation.
double theta_microlocal(int which, const ThetaParams& p, double freq, double modulation);
/// Runs with parameters outside the lemma's range too; the note says so.
AuditReport audit_microlocal_theta(int which, const ThetaParams& p, const AuditOptions& opt = {});

/// Region predicates on (xi, tau, xi1, tau1).
bool in_BI(int m, double xi, double tau, double xi1, double tau1);
bool in_BII(int m, double xi, double tau, double xi1, double tau1);
bool in_BIII(int m, double xi, double tau, double xi1, double tau1);
bool in_BIV(int m, double xi, double tau, double xi1, double tau1);

/// G_1 or G_2 at tau.
double G_value(int which, double s, double b, int m, int l, double tau);
/// Sup over tau_grid of the weighted G. G_1 uses (1+|tau|)^{2(s+j-l)/m} and needs -1 <= s <= 1/2,
/// 0 <= b < 1/2; G_2 uses (1+|tau|)^{2(j-l)/m} and needs 0 < b < 1/2. Out of range -> DomainError.
AuditReport audit_G(int which, double s, double b, int m, int l, const std::vector<double>& tau_grid);
/// Symmetric log grid: 0 and +-10^k for k in [-2, log10(tau_max)], n points in total.
std::vector<double> log_tau_grid(double tau_max, int n);

// --- discrete Bourgain norm ---------------------------------------------------------------

/// Weighted l2 of the zero-padded discrete space-time transform of the field. Weights are
/// (1+|xi|)^s (1+|tau-xi^m|)^b + [|xi|<1] (1+|tau|)^alpha, or (1+|tau|)^{s/m} (1+|tau-xi^m|)^b with y_norm.
double discrete_bourgain_norm(const SolutionField& field, int m, double s, double b, double alpha,
                              bool y_norm = false);

}  // namespace utm
