#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "utm/data.hpp"
#include "utm/field.hpp"
#include "utm/reference_fd.hpp"
#include "utm/transforms.hpp"

namespace utm {

enum class Mode { linear, nonlinear, reference, compare, constants, audit, params };
std::string to_string(Mode m);

/// Flat run configuration. Handle fields hold canonical handle text (see parse_handle).
struct RunConfig {
  Mode mode = Mode::linear;

  // problem
  int m = 3;
  double T = 0.25;
  double s = 0.0;
  bool nonlinear = false;  ///< forced on in nonlinear mode; used by reference and compare
  std::string u0 = "zero";
  std::vector<std::string> g;  ///< g0 .. g_{j-1}, filled with "zero"
  std::string f_space = "zero";
  std::string f_time = "zero";

  // output grid on [x_min, x_max] x [0, T]
  double x_min = 0.0;
  double x_max = 10.0;
  int nx = 128;
  int nt = 64;

  QuadratureConfig quad;
  FDConfig fd;
  int max_iter = 25;
  double tol = 1e-8;

  // audits: dm, calc, theta4, theta, G, bourgain
  std::string audit;
  int audit_which = 1;
  std::string audit_weight = "xi";
  int audit_samples = 2000;
  double audit_radius = 1.0;
  bool audit_sweep = false;
  double audit_b = 0.45;
  double audit_b1 = 0.45;
  double audit_alpha1 = 0.55;
  int audit_l = 0;
  double audit_tau_max = 1e6;
  int audit_tau_points = 2001;

  std::uint64_t seed = 20240601;
  std::string out = "out";

  bool operator==(const RunConfig&) const = default;
};

/// Parses `key = value` lines (`#` starts a comment). Throws ConfigError listing every
/// problem as "line N: message".
RunConfig parse_config(const std::string& text);
/// Canonical text; parse_config(emit_config(c)) == c for every parsed config.
std::string emit_config(const RunConfig& c);

/// `zero`, `builtin:name(k=v, ...)` or `csv:path` (two columns x,v; optional header).
DataHandle parse_handle(const std::string& text);
/// Canonical text for a handle string.
std::string canonical_handle(const std::string& text);

/// Problem spec and grid described by the config (not validated).
ProblemSpec make_spec(const RunConfig& c);
Grid make_grid(const RunConfig& c);

/// Header `x,t,re_u,im_u`, rows ordered by t then x, values printed with %.12e.
void write_field_csv(const SolutionField& f, const std::string& path);
SolutionField read_field_csv(const std::string& path);

/// Runs the configured mode, writing artifacts into c.out. Returns the process exit code
/// (0, or 1 config/domain, 2 numerical, 3 accuracy) and reports errors on `err`.
int run(const RunConfig& c, std::ostream& err);

}  // namespace utm
