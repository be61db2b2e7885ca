#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mesh.hpp"

namespace adsmax {

inline constexpr int kMaxWordRadius = 6;

// Weighted graph over group-translated copies of the fundamental mesh; edge
// weights are I_t-lengths (hyperbolic length times the geometric mean of the
// endpoint conformal factors). Nodes on paired sides are identified across
// adjacent copies.
struct LiftedGraph {
  std::vector<std::string> words;  // reduced words, deduplicated as group elements
  int word_radius = 0;
  int base_vertex = 0;   // quotient vertex whose orbit is counted
  int64_t node_count = 0;
  int64_t base_node = 0;
  std::vector<int64_t> orbit_nodes;  // node of (copy, base vertex) per copy
  // CSR adjacency
  std::vector<int64_t> adj_offset;
  std::vector<int64_t> adj_node;
  std::vector<double> adj_weight;
  // distance below which counting is unaffected by truncation: the minimum
  // distance to a node adjacent to a missing copy
  double frontier_radius = 0;
  std::vector<int64_t> unsafe_nodes;
};

LiftedGraph build_orbit_graph(const SurfaceMesh& s, const Eigen::VectorXd& u, int word_radius,
                              double weight_scale = 1.0);

struct OrbitDistance {
  std::string word;
  double distance;
  bool trusted;  // distance <= frontier_radius
};

// single-source shortest paths from the base node to every copy of the base
// vertex, sorted ascending; fills g.frontier_radius
std::vector<OrbitDistance> orbit_distances(LiftedGraph& g);

struct EntropyEstimate {
  double e_hat = 0;
  double fit_residual = 0;  // RMS of the log-count fit
  int samples = 0;
  double r_min = 0, r_max = 0;
  double count_at_rmax = 0;
  std::vector<std::pair<double, int64_t>> counts;  // (R, N(R)) at jump points <= r_max
};

// least-squares slope of log N(R) against R over [r_min, r_max]; distances
// must be the trusted orbit table (r_max <= frontier_radius is enforced by
// the caller who knows the frontier)
EntropyEstimate entropy_estimate(const std::vector<double>& distances, double r_min, double r_max);

}  // namespace adsmax
