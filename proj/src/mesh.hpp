#pragma once

#include <array>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace adsmax {

// Triangulated surface, stored both as the identified (quotient) complex used
// by the operators and as the unidentified fundamental copy used for lifting
// to the universal cover. Immutable after construction.
struct SurfaceMesh {
  enum class Metric { Hyperbolic, Euclidean };

  Metric metric = Metric::Hyperbolic;
  int genus = 2;
  bool closed = true;
  int subdivision = 0;

  // quotient complex
  std::vector<cplx> vertices;                       // representative coords per class
  std::vector<std::array<int, 3>> faces;            // class ids
  std::vector<std::array<double, 3>> face_lengths;  // length of edge opposite corner k
  std::vector<TriangleAngles> face_angles;
  std::vector<double> vertex_area;  // lumped
  std::vector<double> curvature;    // K_h, analytic (-1 hyperbolic, 0 flat)

  struct Edge {
    int u, v;  // class ids
    double length;
  };
  std::vector<Edge> edges;  // multi-edges possible at coarse subdivision

  // fundamental copy
  std::vector<cplx> unid_points;
  std::vector<int> unid_class;
  std::vector<std::array<int, 3>> unid_faces;

  // One record per oriented boundary side; record L describes the letter
  // (generator or inverse) whose isometry maps source_side onto target_side.
  // In the universal cover, node (copy, target_vertices[i]) is the same point
  // as (copy*letter, source_vertices[i]).
  struct SidePairing {
    int generator;  // 0..3 = a,b,c,d
    bool inverse;
    int target_side;
    int source_side;
    std::vector<int> target_vertices;  // unid ids, ordered along the side
    std::vector<int> source_vertices;
  };
  std::vector<SidePairing> pairings;  // letters: 0..3 = a..d, 4..7 = inverses
  std::array<Mat2c, 4> gens_disk;
  std::array<Mat2d, 4> gens_real;
  bool has_group = false;

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
  double total_area() const;
  double max_edge_length() const;
};

inline constexpr int kMaxSubdivision = 7;

SurfaceMesh build_genus2_surface(int subdivision_level);
// Flat unit-square torus, grid 8*2^level per side; solver validation harness
// only (outside the genus >= 2 hypotheses; reports label it accordingly).
SurfaceMesh build_torus_surface(int subdivision_level);
// Open planar grid patch on [0,1]^2; operator consistency tests.
SurfaceMesh build_flat_patch(int n);

struct ValidationCheck {
  std::string name;
  bool pass;
  double measured;
  double tolerance;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_ok() const;
};

ValidationReport validate_surface(const SurfaceMesh& s);

// Dijkstra over the quotient edge graph from a source set.
std::vector<double> mesh_distance(const SurfaceMesh& s, const std::vector<int>& sources);

int find_vertex_near(const SurfaceMesh& s, cplx p, double tol = 1e-9);

std::string mesh_json(const SurfaceMesh& s);

}  // namespace adsmax
