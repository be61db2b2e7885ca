#pragma once

#include <optional>

#include "qdiff.hpp"
#include "solver.hpp"

namespace adsmax {

// lambda_t = t rho e^{-2u}, the positive principal curvature of the maximal
// surface; the induced Gauss curvature is K_I = -1 + lambda^2
Eigen::VectorXd principal_curvature(const Eigen::VectorXd& rho, double t,
                                    const Eigen::VectorXd& u);

// phi_t = u - log(t rho)/2 > 0; lambda = e^{-2 phi} identically
Eigen::VectorXd conformal_gap(const Eigen::VectorXd& rho, double t, const Eigen::VectorXd& u);

// Lower bound for the width of the convex core in radians,
// arctan((1/(1-lambda_max))^{1/C}), valid when lambda_max >= delta; the
// constants C, delta are existential and must be supplied.
struct WidthBound {
  bool applicable = false;
  double radians = 0;
};
WidthBound width_lower_bound(double lambda_max, double C, double delta);

struct RayRecord {
  double t = 0;
  double lambda_max = 0;       // over all vertices
  double lambda_min_away = 0;  // over vertices farther than r_excl from zeros
  double min_phi = 0;          // NaN at t = 0
  double sup_ratio = 0;        // max over away vertices of e^{2u}/(t rho); NaN at t = 0
  double residual_norm = 0;
  int iterations = 0;
  bool bracket_low_ok = false;
  bool bracket_high_ok = false;
  std::optional<double> entropy;      // filled by the runner when requested
  std::optional<double> width_bound;  // radians, when applicable
};

struct RayReport {
  std::vector<RayRecord> records;
  double exclusion_radius = 0.3;
  int away_count = 0;
  // monotonicity across consecutive records, evaluated at away vertices
  bool u_nondecreasing = true;
  bool phi_strictly_decreasing = true;
  bool lambda_strictly_increasing = true;
  bool sup_ratio_strictly_decreasing = true;
  bool lambda_below_one = true;  // strict at every vertex, every t
};

struct RaySweepOptions {
  SolveOptions solver;
  double exclusion_radius = 0.3;
  bool keep_fields = false;
};

struct RaySweepResult {
  RayReport report;
  std::vector<Eigen::VectorXd> fields;  // u_t per record when keep_fields
};

// warm-started solves over an increasing t grid plus per-record diagnostics
RaySweepResult ray_sweep(const SurfaceMesh& s, const LaplaceOperator& op,
                         const Eigen::VectorXd& rho, const QDiffSpec& spec,
                         const std::vector<double>& t_values, const RaySweepOptions& opts = {});

}  // namespace adsmax
