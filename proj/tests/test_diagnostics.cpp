#include <doctest.h>

#include <cmath>

#include "diagnostics.hpp"
#include "errors.hpp"

using namespace adsmax;

namespace {

struct Setup {
  SurfaceMesh s;
  LaplaceOperator op;
  QDiffSpec spec;
  Eigen::VectorXd rho;
};

Setup genus2_setup(int level) {
  Setup x;
  x.s = build_genus2_surface(level);
  x.op = assemble_operators(x.s);
  const Octagon& o = Octagon::regular();
  for (int k = 0; k < 8; k += 2)
    x.spec.zeros.emplace_back(find_vertex_near(x.s, disk::midpoint(cplx(0, 0), o.corners[k])), 1);
  x.rho = synth_qdiff_norm(x.s, x.op, x.spec);
  return x;
}

}  // namespace

TEST_CASE("principal curvature: zero at t = 0, one on the torus") {
  const Setup x = genus2_setup(2);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(x.s.vertex_count());
  CHECK(principal_curvature(x.rho, 0.0, zero).cwiseAbs().maxCoeff() == 0.0);

  // torus boundary mode: e^{2u} = t rho exactly, lambda = 1
  const SurfaceMesh torus = build_torus_surface(0);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(torus.vertex_count());
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(torus.vertex_count(), 0.5 * std::log(4.0));
  const Eigen::VectorXd lam = principal_curvature(ones, 4.0, u);
  CHECK((lam.array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("conformal gap: positive away from zeros, lambda = e^{-2 phi}") {
  const Setup x = genus2_setup(3);
  const SolveResult r = solve_gauss(x.s, x.op, x.rho, 1.0);
  const Eigen::VectorXd phi = conformal_gap(x.rho, 1.0, r.u);
  const Eigen::VectorXd lam = principal_curvature(x.rho, 1.0, r.u);
  const auto mask = away_mask(x.s, x.spec, 0.3);
  double err = 0;
  for (int i = 0; i < x.s.vertex_count(); ++i)
    if (mask[i]) {
      CHECK(phi[i] > 0.0);
      err = std::max(err, std::abs(lam[i] - std::exp(-2.0 * phi[i])));
    }
  CHECK(err < 1e-12);
  CHECK_THROWS_AS(conformal_gap(x.rho, 0.0, r.u), DomainError);
}

TEST_CASE("width bound: formula, gate, monotonicity, limit") {
  const WidthBound w = width_lower_bound(0.9, 1.0, 0.5);
  CHECK(w.applicable);
  CHECK(w.radians == doctest::Approx(std::atan(10.0)).epsilon(1e-14));
  CHECK(w.radians == doctest::Approx(1.4711276743).epsilon(1e-9));

  CHECK_FALSE(width_lower_bound(0.3, 1.0, 0.5).applicable);

  double prev = 0;
  for (double lam : {0.5, 0.6, 0.7, 0.8, 0.9, 0.99, 0.999999}) {
    const WidthBound wb = width_lower_bound(lam, 1.0, 0.5);
    CHECK(wb.radians > prev);
    CHECK(wb.radians < M_PI / 2);
    prev = wb.radians;
  }
  CHECK(std::abs(width_lower_bound(1.0 - 1e-9, 1.0, 0.5).radians - M_PI / 2) < 1e-8);
  CHECK_THROWS_AS(width_lower_bound(1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(width_lower_bound(0.9, -1.0, 0.5), ConfigError);
}

TEST_CASE("ray sweep: warm-started records with monotone diagnostics") {
  const Setup x = genus2_setup(3);
  RaySweepOptions opts;
  const RaySweepResult rs = ray_sweep(x.s, x.op, x.rho, x.spec, {0.0, 1.0, 2.0, 4.0}, opts);
  const RayReport& rep = rs.report;
  REQUIRE(rep.records.size() == 4);

  // t = 0 record: lambda = 0, phi/sup_ratio undefined
  CHECK(rep.records[0].lambda_max == 0.0);
  CHECK(std::isnan(rep.records[0].min_phi));
  CHECK(std::isnan(rep.records[0].sup_ratio));

  CHECK(rep.u_nondecreasing);
  CHECK(rep.phi_strictly_decreasing);
  CHECK(rep.lambda_strictly_increasing);
  CHECK(rep.sup_ratio_strictly_decreasing);
  CHECK(rep.lambda_below_one);
  for (const auto& rec : rep.records) {
    CHECK(rec.bracket_low_ok);
    CHECK(rec.bracket_high_ok);
    if (rec.t > 0) {
      CHECK(rec.min_phi > 0.0);
      CHECK(rec.sup_ratio > 1.0);
      CHECK(rec.lambda_max < 1.0);
    }
  }
  // K_I = -1 + lambda^2 stays in (-1, 0) on genus-2 runs
  const double lmax = rep.records.back().lambda_max;
  CHECK(-1.0 + lmax * lmax < 0.0);
}

TEST_CASE("ray sweep input validation") {
  const Setup x = genus2_setup(2);
  CHECK_THROWS_AS(ray_sweep(x.s, x.op, x.rho, x.spec, {1.0, 1.0}, {}), ConfigError);
  CHECK_THROWS_AS(ray_sweep(x.s, x.op, x.rho, x.spec, {}, {}), ConfigError);
  RaySweepOptions opts;
  opts.exclusion_radius = 1e9;
  CHECK_THROWS_AS(ray_sweep(x.s, x.op, x.rho, x.spec, {1.0}, opts), DomainError);
}
