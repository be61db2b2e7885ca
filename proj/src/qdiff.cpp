#include "qdiff.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <set>

#include "errors.hpp"

namespace adsmax {

namespace {

void check_spec(const SurfaceMesh& s, const QDiffSpec& spec) {
  const int need = 4 * s.genus - 4;
  int total = 0;
  std::set<int> seen;
  for (const auto& [v, k] : spec.zeros) {
    if (v < 0 || v >= s.vertex_count()) throw ConfigError("qdiff zero vertex out of range");
    if (k < 1) throw ConfigError("qdiff zero order must be >= 1");
    if (!seen.insert(v).second) throw ConfigError("duplicate qdiff zero vertex");
    total += k;
  }
  if (total != need)
    throw ConfigError("qdiff zero orders sum to " + std::to_string(total) + ", need 4g-4 = " +
                      std::to_string(need) + " (Gauss-Bonnet solvability)");
}

}  // namespace

Eigen::VectorXd synth_qdiff_norm(const SurfaceMesh& s, const LaplaceOperator& op,
                                 const QDiffSpec& spec) {
  check_spec(s, spec);
  const int n = s.vertex_count();
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = op.mass[i] * s.curvature[i];
  for (const auto& [v, k] : spec.zeros) b[v] += M_PI * k;
  // exact compatibility: distribute the (roundoff-level) total onto the mass
  b -= op.mass * (b.sum() / op.mass.sum());

  // bordered system pins the additive constant; the unit-area normalization
  // below overrides it anyway
  Eigen::SparseMatrix<double> S = op.stiffness();
  std::vector<Eigen::Triplet<double>> trips;
  for (int k = 0; k < S.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(S, k); it; ++it)
      trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int i = 0; i < n; ++i) {
    trips.emplace_back(i, n, op.mass[i]);
    trips.emplace_back(n, i, op.mass[i]);
  }
  Eigen::SparseMatrix<double> aug(n + 1, n + 1);
  aug.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(aug);
  if (lu.info() != Eigen::Success)
    throw SolverError("qdiff Poisson factorization failed (disconnected mesh?)");
  Eigen::VectorXd rhs(n + 1);
  rhs.head(n) = -b;
  rhs[n] = 0.0;
  Eigen::VectorXd sol = lu.solve(rhs);
  Eigen::VectorXd sigma = sol.head(n);

  const double flat_area = (op.mass.array() * (2.0 * sigma.array()).exp()).sum();
  sigma.array() -= 0.5 * std::log(flat_area);
  return (2.0 * sigma.array()).exp();
}

std::vector<char> away_mask(const SurfaceMesh& s, const QDiffSpec& spec, double radius) {
  std::vector<int> sources;
  for (const auto& [v, k] : spec.zeros) sources.push_back(v);
  std::vector<char> mask(s.vertex_count(), 1);
  if (sources.empty()) return mask;
  const auto d = mesh_distance(s, sources);
  for (int i = 0; i < s.vertex_count(); ++i) mask[i] = d[i] > radius ? 1 : 0;
  return mask;
}

double holomorphicity_residual(const SurfaceMesh& s, const LaplaceOperator& op,
                               const Eigen::VectorXd& rho, const QDiffSpec& spec,
                               double exclusion_radius) {
  if (rho.size() != s.vertex_count()) throw ConfigError("rho size mismatch");
  const auto mask = away_mask(s, spec, exclusion_radius);
  bool any = false;
  for (char m : mask) any |= (m != 0);
  if (!any) throw DomainError("holomorphicity_residual: exclusion radius leaves no vertices");
  for (int i = 0; i < s.vertex_count(); ++i)
    if (mask[i] && !(rho[i] > 0))
      throw DomainError("holomorphicity_residual: rho must be positive away from zeros");

  Eigen::VectorXd sigma = 0.5 * rho.array().log();
  Eigen::VectorXd lap = op.apply(sigma);
  double res = 0;
  for (int i = 0; i < s.vertex_count(); ++i)
    if (mask[i]) res = std::max(res, std::abs(lap[i] - s.curvature[i]));
  return res;
}

}  // namespace adsmax
