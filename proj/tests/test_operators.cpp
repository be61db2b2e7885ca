#include <doctest.h>

#include <Eigen/SparseLU>
#include <cmath>
#include <random>

#include "errors.hpp"
#include "operators.hpp"

using namespace adsmax;

TEST_CASE("weights: symmetric, zero row sums, constant kernel") {
  const SurfaceMesh s = build_genus2_surface(2);
  const LaplaceOperator op = assemble_operators(s);
  const int n = s.vertex_count();

  const Eigen::VectorXd rs = op.weights * Eigen::VectorXd::Ones(n);
  CHECK(rs.cwiseAbs().maxCoeff() < 1e-12);

  Eigen::SparseMatrix<double> diff = op.weights - Eigen::SparseMatrix<double>(op.weights.transpose());
  CHECK(Eigen::Map<const Eigen::VectorXd>(diff.valuePtr(), diff.nonZeros()).cwiseAbs().maxCoeff() ==
        0.0);

  CHECK(op.mass.minCoeff() > 0.0);
  CHECK(op.mass.sum() == doctest::Approx(4 * M_PI).epsilon(1e-11));
}

TEST_CASE("kernel dimension 1: bordered solve is unique on mean-zero data") {
  const SurfaceMesh s = build_genus2_surface(2);
  const LaplaceOperator op = assemble_operators(s);
  const int n = s.vertex_count();

  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) f[i] = gauss(rng);
  f.array() -= (op.mass.array() * f.array()).sum() / op.mass.sum();

  Eigen::SparseMatrix<double> S = op.stiffness();
  std::vector<Eigen::Triplet<double>> trips;
  for (int k = 0; k < S.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(S, k); it; ++it)
      trips.emplace_back(it.row(), it.col(), it.value());
  for (int i = 0; i < n; ++i) {
    trips.emplace_back(i, n, op.mass[i]);
    trips.emplace_back(n, i, op.mass[i]);
  }
  Eigen::SparseMatrix<double> aug(n + 1, n + 1);
  aug.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(aug);
  REQUIRE(lu.info() == Eigen::Success);
  Eigen::VectorXd rhs(n + 1);
  rhs.head(n) = (op.mass.array() * f.array()).matrix();
  rhs[n] = 0;
  const Eigen::VectorXd x = lu.solve(rhs);
  CHECK((aug * x - rhs).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("constant fields are in the kernel exactly") {
  const SurfaceMesh s = build_torus_surface(1);
  const LaplaceOperator op = assemble_operators(s);
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(s.vertex_count(), 3.25);
  CHECK((op.weights * c).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("flat patch: linear functions are harmonic, quadratics exact") {
  // structured-grid oracle: the five-point stencil gives Lap(x^2+y^2) = 4
  for (int n : {8, 16}) {
    const SurfaceMesh s = build_flat_patch(n);
    const LaplaceOperator op = assemble_operators(s);
    const int nv = s.vertex_count();
    Eigen::VectorXd lin(nv), quad(nv);
    for (int i = 0; i < nv; ++i) {
      const double x = s.vertices[i].real(), y = s.vertices[i].imag();
      lin[i] = 2 * x - 3 * y + 0.5;
      quad[i] = x * x + y * y;
    }
    const Eigen::VectorXd lap_lin = op.apply(lin);
    const Eigen::VectorXd lap_quad = op.apply(quad);
    double err_lin = 0, err_quad = 0;
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j) {
        const int v = i * (n + 1) + j;  // interior rows only
        err_lin = std::max(err_lin, std::abs(lap_lin[v]));
        err_quad = std::max(err_quad, std::abs(lap_quad[v] - 4.0));
      }
    CHECK(err_lin < 1e-10);
    CHECK(err_quad < 1e-9);
  }
}

TEST_CASE("interior maximum has nonpositive operator value on smooth fields") {
  const SurfaceMesh s = build_genus2_surface(3);
  const LaplaceOperator op = assemble_operators(s);
  const int n = s.vertex_count();
  // a smooth bump around vertex 0 (graph distance based)
  const auto d = mesh_distance(s, {0});
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) f[i] = std::exp(-d[i] * d[i]);
  int argmax = 0;
  for (int i = 0; i < n; ++i)
    if (f[i] > f[argmax]) argmax = i;
  CHECK((op.weights * f)[argmax] <= 0.0);
}

TEST_CASE("degenerate face is rejected with its index") {
  SurfaceMesh s = build_genus2_surface(1);
  s.face_angles[5].area = 0.0;
  CHECK_THROWS_WITH_AS(assemble_operators(s),
                       doctest::Contains("degenerate face 5"), ConfigError);
}
