#include <doctest.h>

#include <cctype>
#include <cmath>
#include <map>

#include "entropy.hpp"
#include "errors.hpp"
#include "qdiff.hpp"

using namespace adsmax;

TEST_CASE("word enumeration: radius 0 and 1 copy counts") {
  const SurfaceMesh s = build_genus2_surface(1);
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.vertex_count());
  LiftedGraph g0 = build_orbit_graph(s, u0, 0);
  CHECK(g0.words.size() == 1);
  LiftedGraph g1 = build_orbit_graph(s, u0, 1);
  CHECK(g1.words.size() == 9);  // identity + 8 generator images
}

TEST_CASE("relation shortcuts are deduplicated as group elements") {
  // [a,b] equals the inverse of [c,d]; BFS to radius 4 must store it once,
  // so the copy count is strictly below the free-group count 3201
  const SurfaceMesh s = build_genus2_surface(1);
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.vertex_count());
  LiftedGraph g = build_orbit_graph(s, u0, 4);
  CHECK(g.words.size() < 3201);
  CHECK(g.words.size() > 3000);
}

TEST_CASE("orbit distances: identity zero, inverse symmetry on trusted set") {
  const SurfaceMesh s = build_genus2_surface(2);
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.vertex_count());
  LiftedGraph g = build_orbit_graph(s, u0, 4);
  const auto dists = orbit_distances(g);
  CHECK(dists.front().word == "");
  CHECK(dists.front().distance == 0.0);
  CHECK(g.frontier_radius > 2.0);

  auto invert = [](const std::string& w) {
    std::string r;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      r += std::isupper(*it) ? std::tolower(*it) : std::toupper(*it);
    return r;
  };
  std::map<std::string, double> by_word;
  for (const auto& d : dists) by_word[d.word] = d.distance;
  int checked = 0;
  for (const auto& d : dists) {
    if (!d.trusted || d.word.empty()) continue;
    const auto it = by_word.find(invert(d.word));
    if (it != by_word.end() && it->second <= g.frontier_radius) {
      CHECK(std::abs(it->second - d.distance) < 1e-9);
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("graph distance to a generator copy approximates the disk distance") {
  // oracle: closed-form hyperbolic distance between the two tile centers
  const SurfaceMesh s = build_genus2_surface(3);
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.vertex_count());
  LiftedGraph g = build_orbit_graph(s, u0, 2);
  const auto dists = orbit_distances(g);
  const cplx image = disk::apply(Octagon::regular().gens_disk[0], cplx(0, 0));
  const double exact = disk::distance(cplx(0, 0), image);
  for (const auto& d : dists)
    if (d.word == "a") {
      CHECK(d.distance >= exact - 1e-12);  // graph metric dominates
      CHECK(d.distance <= exact * 1.30);   // mesh detour at this resolution
    }
  // refinement shrinks the detour
  const SurfaceMesh s2 = build_genus2_surface(2);
  LiftedGraph g2 = build_orbit_graph(s2, Eigen::VectorXd::Zero(s2.vertex_count()), 2);
  const auto d2 = orbit_distances(g2);
  double coarse = 0, fine = 0;
  for (const auto& d : d2)
    if (d.word == "a") coarse = d.distance;
  for (const auto& d : dists)
    if (d.word == "a") fine = d.distance;
  CHECK(fine <= coarse + 1e-12);
}

TEST_CASE("entropy estimate: synthetic e^R counts give slope 1") {
  std::vector<double> ds;
  for (int k = 1; k <= 2000; ++k) ds.push_back(std::log(static_cast<double>(k)));
  const EntropyEstimate e = entropy_estimate(ds, 1.0, std::log(2000.0));
  CHECK(std::abs(e.e_hat - 1.0) < 0.01);
  CHECK(e.fit_residual < 0.05);
}

TEST_CASE("entropy estimate: exact inverse scaling under power-of-two rescale") {
  std::vector<double> ds;
  for (int k = 1; k <= 500; ++k) ds.push_back(std::log(static_cast<double>(k)) * 1.371);
  const EntropyEstimate e1 = entropy_estimate(ds, 0.5, 8.0);
  std::vector<double> scaled(ds);
  for (double& d : scaled) d *= 4.0;
  const EntropyEstimate e4 = entropy_estimate(scaled, 0.5 * 4.0, 8.0 * 4.0);
  CHECK(e4.e_hat == e1.e_hat / 4.0);  // bitwise: power-of-two scaling is exact
  REQUIRE(e1.counts.size() == e4.counts.size());
  for (size_t i = 0; i < e1.counts.size(); ++i) {
    CHECK(e4.counts[i].first == 4.0 * e1.counts[i].first);
    CHECK(e4.counts[i].second == e1.counts[i].second);
  }
}

TEST_CASE("entropy estimate: window errors") {
  std::vector<double> ds = {0.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(entropy_estimate(ds, 0.5, 2.0), DomainError);   // < 3 increments
  CHECK_THROWS_AS(entropy_estimate(ds, 2.0, 1.0), ConfigError);   // inverted window
}

TEST_CASE("lifted graph scaling: power-of-two weight scale is bitwise exact") {
  // scaling every edge weight by 4 scales every Dijkstra sum by exactly 4
  const SurfaceMesh s = build_genus2_surface(2);
  const int n = s.vertex_count();
  LiftedGraph g0 = build_orbit_graph(s, Eigen::VectorXd::Zero(n), 3);
  const auto d0 = orbit_distances(g0);
  LiftedGraph g4 = build_orbit_graph(s, Eigen::VectorXd::Zero(n), 3, 4.0);
  const auto d4 = orbit_distances(g4);
  REQUIRE(d0.size() == d4.size());
  for (size_t i = 0; i < d0.size(); ++i) {
    CHECK(d4[i].word == d0[i].word);
    CHECK(d4[i].distance == 4.0 * d0[i].distance);
  }
  CHECK(g4.frontier_radius == 4.0 * g0.frontier_radius);
}

TEST_CASE("word radius cap raises a resource error with an estimate") {
  const SurfaceMesh s = build_genus2_surface(1);
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.vertex_count());
  CHECK_THROWS_WITH_AS(build_orbit_graph(s, u0, kMaxWordRadius + 1), doctest::Contains("nodes"),
                       ResourceError);
}

TEST_CASE("torus has no orbit graph") {
  const SurfaceMesh s = build_torus_surface(0);
  const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(s.vertex_count());
  CHECK_THROWS_AS(build_orbit_graph(s, u0, 1), ConfigError);
}
