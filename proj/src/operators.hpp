#pragma once

#include <Eigen/Sparse>

#include "mesh.hpp"

namespace adsmax {

// Discrete Laplace-Beltrami with intrinsic cotangent weights and lumped mass.
// Sign convention: (weights*u)_i = sum_j w_ij (u_j - u_i), so the operator
// value at an interior maximum of u is <= 0 (for nonnegative weights), and
// M^{-1} weights approximates the smooth Laplacian.
struct LaplaceOperator {
  Eigen::SparseMatrix<double> weights;  // symmetric, zero row sums
  Eigen::VectorXd mass;                 // positive lumped areas

  // positive semidefinite stiffness = -weights
  Eigen::SparseMatrix<double> stiffness() const { return -weights; }

  // pointwise Laplacian M^{-1} (weights * u)
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const {
    return (weights * u).cwiseQuotient(mass);
  }
};

LaplaceOperator assemble_operators(const SurfaceMesh& s);

// named per-vertex field (CSV export carries the name)
struct ScalarField {
  std::string name;
  Eigen::VectorXd values;
};

}  // namespace adsmax
