#pragma once

#include "operators.hpp"

namespace adsmax {

// zeros of the quadratic differential, vertex-lumped with charge pi*k
struct QDiffSpec {
  std::vector<std::pair<int, int>> zeros;  // (vertex, order k >= 1)
};

// Norm field rho = |q0|_h with unit flat area: solves the discrete Poisson
// problem L sigma = M K + pi sum k_i delta_i for sigma = log(rho)/2, then
// normalizes so that sum_i M_i rho_i = 1.
Eigen::VectorXd synth_qdiff_norm(const SurfaceMesh& s, const LaplaceOperator& op,
                                 const QDiffSpec& spec);

// max over vertices farther than exclusion_radius from every zero of
// |Lap(log(rho)/2) - K|; the defining identity of |q0|_h away from zeros.
double holomorphicity_residual(const SurfaceMesh& s, const LaplaceOperator& op,
                               const Eigen::VectorXd& rho, const QDiffSpec& spec,
                               double exclusion_radius);

// vertices farther than radius from every zero (the monotonicity statements
// exclude neighborhoods of the zeros)
std::vector<char> away_mask(const SurfaceMesh& s, const QDiffSpec& spec, double radius);

}  // namespace adsmax
