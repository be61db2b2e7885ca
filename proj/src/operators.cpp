#include "operators.hpp"

#include <cmath>
#include <map>

#include "errors.hpp"

namespace adsmax {

LaplaceOperator assemble_operators(const SurfaceMesh& s) {
  const int n = s.vertex_count();
  // accumulate per ordered pair (i<j) so the symmetric entries are bitwise equal
  std::map<std::pair<int, int>, double> w;
  for (int f = 0; f < s.face_count(); ++f) {
    const auto& fc = s.faces[f];
    const auto& ang = s.face_angles[f];
    if (!(ang.area > 0) || !std::isfinite(ang.area))
      throw ConfigError("assemble_operators: degenerate face " + std::to_string(f));
    const std::array<std::tuple<int, int, double>, 3> contrib = {
        std::make_tuple(fc[1], fc[2], ang.alpha), std::make_tuple(fc[0], fc[2], ang.beta),
        std::make_tuple(fc[0], fc[1], ang.gamma)};
    for (const auto& [u, v, angle] : contrib) {
      const double t = std::tan(angle);
      if (!std::isfinite(t) || std::abs(angle) < 1e-14)
        throw ConfigError("assemble_operators: degenerate angle in face " + std::to_string(f));
      const double cot = std::abs(t) > 1e-14 ? 0.5 / t : 0.0;
      w[{std::min(u, v), std::max(u, v)}] += cot;
    }
  }
  std::vector<double> diag(n, 0.0);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(4 * w.size() + n);
  for (const auto& [key, val] : w) {
    trips.emplace_back(key.first, key.second, val);
    trips.emplace_back(key.second, key.first, val);
    diag[key.first] -= val;
    diag[key.second] -= val;
  }
  for (int i = 0; i < n; ++i) trips.emplace_back(i, i, diag[i]);

  LaplaceOperator op;
  op.weights.resize(n, n);
  op.weights.setFromTriplets(trips.begin(), trips.end());
  op.mass = Eigen::Map<const Eigen::VectorXd>(s.vertex_area.data(), n);
  for (int i = 0; i < n; ++i)
    if (!(op.mass[i] > 0))
      throw ConfigError("assemble_operators: nonpositive lumped area at vertex " +
                        std::to_string(i));
  return op;
}

}  // namespace adsmax
