#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "utm/field.hpp"
#include "utm/global_relation.hpp"
#include "utm/problem.hpp"

namespace utm {

/// Quadrature nodes on the real line and on every sector boundary.
struct ContourNodes {
  std::vector<cd> xi;
  /// Weight including d xi / dr; line weights also carry 1/(2 pi).
  std::vector<cd> w;
  /// xi^m, real on the line and on the rays.
  std::vector<double> omega;
  /// -1 for the real line, otherwise the sector index p (1-based).
  std::vector<int> sector;
  std::size_t line_count = 0;

  std::size_t size() const { return xi.size(); }
};

ContourNodes make_contour_nodes(int m, const QuadratureConfig& q);

/// Selects one contribution to a sector's boundary integral.
struct RayTerm {
  enum class Kind { initial, forcing, boundary, model };
  Kind kind = Kind::initial;
  int index = 1;  ///< rotation n (1-based) for initial/forcing, l for boundary
};

/// Evaluates S[u0, g; f] on a fixed grid. Data-independent tables and the
/// (u0, g) amplitudes are built once, so repeated forcing solves are cheap.
class LinearEvaluator {
 public:
  LinearEvaluator(const ValidatedSpec& spec, const UTMConstants& constants, const Grid& grid,
                  const QuadratureConfig& q);

  /// S[u0, g; f] with the spec's forcing.
  SolutionField evaluate() const;
  /// S[u0, g; 0].
  SolutionField data_response() const;
  /// S[0, 0; f]. Sampled forcings must contain every grid time among their time samples.
  SolutionField forcing_response(const ForcingHandle& f) const;

  /// One term of sector p's boundary integral at a single point (both rays).
  cd ray_integral(const RayTerm& term, int p, double x, double t) const;

  const ContourNodes& nodes() const { return nodes_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const Grid& grid() const { return grid_; }

 private:
  SolutionField assemble(const Eigen::MatrixXcd& phi, bool with_boundary_residues) const;
  Eigen::MatrixXcd forcing_amplitude(const ForcingHandle& f) const;
  void build_data_amplitude();
  cd model(cd xi) const;
  cd pole_series(int p, int l, cd xi) const;
  cd pole_residue(int p, int l, double x) const;

  ValidatedSpec spec_;
  UTMConstants c_;
  Grid grid_;
  QuadratureConfig q_;
  ContourNodes nodes_;
  std::vector<cd> zetas_;               ///< line nodes followed by rotated ray nodes
  std::vector<std::size_t> rot_index_;  ///< ray node r, rotation n -> index in zetas_
  std::vector<double> model_coeff_;
  Eigen::MatrixXcd phi_data_;
  Eigen::MatrixXd gvals_;  ///< g_l(t_k), j x nt
  std::vector<std::string> warnings_;
};

SolutionField evaluate_linear(const ValidatedSpec& spec, const UTMConstants& constants, const Grid& grid,
                              const QuadratureConfig& q = {});

/// Free whole-line evolution (1/2 pi) int e^{i xi x + i xi^m t} U0^(xi) d xi, U0 given on
/// [-truncation_radius, truncation_radius]; uses the real-line nodes of make_contour_nodes.
SolutionField wholeline_oracle(const DataHandle& U0, int m, const Grid& grid, const QuadratureConfig& q = {});

/// d_x^l U(0, t) of the whole-line evolution at the given times.
std::vector<double> wholeline_traces(const DataHandle& U0, int m, int l, const std::vector<double>& times,
                                     const QuadratureConfig& q = {});

}  // namespace utm
