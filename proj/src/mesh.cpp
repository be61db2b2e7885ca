#include "mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace adsmax {

double SurfaceMesh::total_area() const {
  double a = 0;
  for (const auto& t : face_angles) a += t.area;
  return a;
}

double SurfaceMesh::max_edge_length() const {
  double m = 0;
  for (const auto& e : edges) m = std::max(m, e.length);
  return m;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    int root = x;
    while (parent[root] != root) root = parent[root];
    while (parent[x] != root) {
      int next = parent[x];
      parent[x] = root;
      x = next;
    }
    return root;
  }
  void unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
  }
};

double dist(SurfaceMesh::Metric m, cplx z, cplx w) {
  return m == SurfaceMesh::Metric::Hyperbolic ? disk::distance(z, w) : std::abs(z - w);
}

cplx mid(SurfaceMesh::Metric m, cplx z, cplx w) {
  return m == SurfaceMesh::Metric::Hyperbolic ? disk::midpoint(z, w) : (z + w) / 2.0;
}

// fills quotient geometry (face lengths, angles, areas, masses, edges) from
// the unidentified copy + class map; boundary edges are merged via `mate`.
void finish_mesh(SurfaceMesh& s, const std::map<std::pair<int, int>, int>& boundary_side,
                 const std::map<std::pair<int, int>, std::pair<int, int>>& boundary_partner) {
  const int nf = static_cast<int>(s.unid_faces.size());
  s.faces.resize(nf);
  s.face_lengths.resize(nf);
  s.face_angles.resize(nf);
  for (int f = 0; f < nf; ++f) {
    const auto& uf = s.unid_faces[f];
    s.faces[f] = {s.unid_class[uf[0]], s.unid_class[uf[1]], s.unid_class[uf[2]]};
    const cplx p0 = s.unid_points[uf[0]], p1 = s.unid_points[uf[1]], p2 = s.unid_points[uf[2]];
    const double a = dist(s.metric, p1, p2);
    const double b = dist(s.metric, p2, p0);
    const double c = dist(s.metric, p0, p1);
    if (!triangle_inequality_ok(a, b, c))
      throw ConfigError("degenerate face " + std::to_string(f) + " in mesh construction");
    s.face_lengths[f] = {a, b, c};
    s.face_angles[f] = s.metric == SurfaceMesh::Metric::Hyperbolic ? hyperbolic_angles(a, b, c)
                                                                   : euclidean_angles(a, b, c);
  }
  const int nv = static_cast<int>(s.vertices.size());
  s.vertex_area.assign(nv, 0.0);
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < 3; ++k) s.vertex_area[s.faces[f][k]] += s.face_angles[f].area / 3.0;

  // quotient edges: unidentified edges, boundary pairs merged once
  std::map<std::pair<int, int>, double> unid_edges;
  for (int f = 0; f < nf; ++f) {
    const auto& uf = s.unid_faces[f];
    const auto& L = s.face_lengths[f];
    const std::array<std::tuple<int, int, double>, 3> es = {
        std::make_tuple(uf[1], uf[2], L[0]), std::make_tuple(uf[2], uf[0], L[1]),
        std::make_tuple(uf[0], uf[1], L[2])};
    for (const auto& [u, v, len] : es)
      unid_edges[{std::min(u, v), std::max(u, v)}] = len;
  }
  s.edges.clear();
  for (const auto& [key, len] : unid_edges) {
    auto bp = boundary_partner.find(key);
    if (bp != boundary_partner.end() && bp->second < key) continue;  // partner emits it
    s.edges.push_back({s.unid_class[key.first], s.unid_class[key.second], len});
    if (bp != boundary_partner.end()) {
      double plen = unid_edges.at(bp->second);
      if (std::abs(plen - len) > 1e-9)
        throw ConfigError("paired boundary edges disagree in length");
    }
  }
  (void)boundary_side;
}

}  // namespace

SurfaceMesh build_genus2_surface(int subdivision_level) {
  if (subdivision_level < 0) throw ConfigError("subdivision_level must be nonnegative");
  if (subdivision_level > kMaxSubdivision)
    throw ResourceError("subdivision_level " + std::to_string(subdivision_level) +
                        " exceeds cap " + std::to_string(kMaxSubdivision));
  const Octagon& oct = Octagon::regular();

  SurfaceMesh s;
  s.metric = SurfaceMesh::Metric::Hyperbolic;
  s.genus = 2;
  s.closed = true;
  s.subdivision = subdivision_level;
  s.gens_disk = oct.gens_disk;
  s.gens_real = oct.gens_real;
  s.has_group = true;

  s.unid_points.push_back(cplx(0, 0));
  for (int k = 0; k < 8; ++k) s.unid_points.push_back(oct.corners[k]);
  for (int k = 0; k < 8; ++k) s.unid_faces.push_back({0, 1 + k, 1 + (k + 1) % 8});
  std::map<std::pair<int, int>, int> side_of;  // boundary edge -> side id
  for (int k = 0; k < 8; ++k) {
    int u = 1 + k, v = 1 + (k + 1) % 8;
    side_of[{std::min(u, v), std::max(u, v)}] = k;
  }

  for (int lvl = 0; lvl < subdivision_level; ++lvl) {
    std::map<std::pair<int, int>, int> edge_mid;
    std::map<std::pair<int, int>, int> new_side_of;
    std::vector<std::array<int, 3>> new_faces;
    auto midpoint = [&](int i, int j) {
      auto key = std::make_pair(std::min(i, j), std::max(i, j));
      auto it = edge_mid.find(key);
      if (it != edge_mid.end()) return it->second;
      s.unid_points.push_back(mid(s.metric, s.unid_points[i], s.unid_points[j]));
      int idx = static_cast<int>(s.unid_points.size()) - 1;
      edge_mid[key] = idx;
      auto sd = side_of.find(key);
      if (sd != side_of.end()) {
        new_side_of[{std::min(i, idx), std::max(i, idx)}] = sd->second;
        new_side_of[{std::min(j, idx), std::max(j, idx)}] = sd->second;
      }
      return idx;
    };
    for (const auto& f : s.unid_faces) {
      int m01 = midpoint(f[0], f[1]);
      int m12 = midpoint(f[1], f[2]);
      int m20 = midpoint(f[2], f[0]);
      new_faces.push_back({f[0], m01, m20});
      new_faces.push_back({m01, f[1], m12});
      new_faces.push_back({m20, m12, f[2]});
      new_faces.push_back({m01, m12, m20});
    }
    s.unid_faces = std::move(new_faces);
    side_of = std::move(new_side_of);
  }

  // vertices on each side, ordered by distance from the side's first corner
  std::array<std::vector<int>, 8> on_side;
  {
    std::array<std::set<int>, 8> acc;
    for (const auto& [e, k] : side_of) {
      acc[k].insert(e.first);
      acc[k].insert(e.second);
    }
    for (int k = 0; k < 8; ++k) {
      on_side[k].assign(acc[k].begin(), acc[k].end());
      const cplx corner = s.unid_points[1 + k];
      std::sort(on_side[k].begin(), on_side[k].end(), [&](int u, int v) {
        return disk::distance(corner, s.unid_points[u]) < disk::distance(corner, s.unid_points[v]);
      });
    }
  }

  // boundary identification + pairing records (letters 0..7)
  const int n_unid = static_cast<int>(s.unid_points.size());
  UnionFind uf(n_unid);
  s.pairings.resize(8);
  for (int letter = 0; letter < 8; ++letter) {
    const int g = letter % 4;
    const bool inv = letter >= 4;
    SurfaceMesh::SidePairing rec;
    rec.generator = g;
    rec.inverse = inv;
    rec.target_side = inv ? oct.gen_sides[g][1] : oct.gen_sides[g][0];
    rec.source_side = inv ? oct.gen_sides[g][0] : oct.gen_sides[g][1];
    const Mat2c to_source = inv ? s.gens_disk[g] : Mat2c(s.gens_disk[g].inverse());
    for (int p : on_side[rec.target_side]) {
      const cplx q = disk::apply(to_source, s.unid_points[p]);
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (int v : on_side[rec.source_side]) {
        double d = std::abs(q - s.unid_points[v]);
        if (d < best_d) {
          best_d = d;
          best = v;
        }
      }
      if (best < 0 || best_d > 1e-9)
        throw ConfigError("side pairing failed to match a boundary vertex");
      rec.target_vertices.push_back(p);
      rec.source_vertices.push_back(best);
      if (!inv) uf.unite(p, best);  // inverse letters repeat the same identifications
    }
    s.pairings[letter] = std::move(rec);
  }

  // classes in first-appearance order
  s.unid_class.assign(n_unid, -1);
  for (int i = 0; i < n_unid; ++i) {
    int r = uf.find(i);
    if (s.unid_class[r] < 0) {
      s.unid_class[r] = static_cast<int>(s.vertices.size());
      s.vertices.push_back(s.unid_points[r]);
    }
    s.unid_class[i] = s.unid_class[r];
  }
  s.curvature.assign(s.vertices.size(), -1.0);

  // boundary partner edges (for quotient edge merging)
  std::map<std::pair<int, int>, std::pair<int, int>> partner;
  for (int letter = 0; letter < 4; ++letter) {
    const auto& rec = s.pairings[letter];
    std::map<int, int> mate;
    for (size_t i = 0; i < rec.target_vertices.size(); ++i)
      mate[rec.target_vertices[i]] = rec.source_vertices[i];
    for (const auto& [e, k] : side_of) {
      if (k != rec.target_side) continue;
      int mu = mate.at(e.first), mv = mate.at(e.second);
      auto pkey = std::make_pair(std::min(mu, mv), std::max(mu, mv));
      partner[e] = pkey;
      partner[pkey] = e;
    }
  }
  finish_mesh(s, side_of, partner);
  return s;
}

SurfaceMesh build_torus_surface(int subdivision_level) {
  if (subdivision_level < 0) throw ConfigError("subdivision_level must be nonnegative");
  if (subdivision_level > kMaxSubdivision)
    throw ResourceError("subdivision_level " + std::to_string(subdivision_level) +
                        " exceeds cap " + std::to_string(kMaxSubdivision));
  const int n = 8 << subdivision_level;
  const double h = 1.0 / n;

  SurfaceMesh s;
  s.metric = SurfaceMesh::Metric::Euclidean;
  s.genus = 1;
  s.closed = true;
  s.subdivision = subdivision_level;
  s.has_group = false;

  auto vid = [&](int i, int j) { return ((i % n + n) % n) * n + ((j % n + n) % n); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.unid_points.push_back(cplx(i * h, j * h));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      s.unid_faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      s.unid_faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  s.unid_class.resize(n * n);
  for (int i = 0; i < n * n; ++i) s.unid_class[i] = i;
  s.vertices = s.unid_points;
  s.curvature.assign(n * n, 0.0);

  // wrapped faces reuse vertex ids, so lengths cannot come from coordinates;
  // fill quotient geometry directly from the structured cells.
  const int nf = static_cast<int>(s.unid_faces.size());
  s.faces.resize(nf);
  s.face_lengths.resize(nf);
  s.face_angles.resize(nf);
  const double diag = h * std::sqrt(2.0);
  for (int f = 0; f < nf; ++f) {
    s.faces[f] = s.unid_faces[f];
    // lower triangle (v, v+x, v+x+y): edges (x+y->..): opposite lengths (h, diag, h)
    // upper triangle (v, v+x+y, v+y): opposite lengths (h, h, diag)
    s.face_lengths[f] = (f % 2 == 0) ? std::array<double, 3>{h, diag, h}
                                     : std::array<double, 3>{h, h, diag};
    const auto& L = s.face_lengths[f];
    s.face_angles[f] = euclidean_angles(L[0], L[1], L[2]);
  }
  s.vertex_area.assign(n * n, 0.0);
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < 3; ++k) s.vertex_area[s.faces[f][k]] += s.face_angles[f].area / 3.0;
  std::map<std::pair<int, int>, double> acc;
  for (int f = 0; f < nf; ++f)
    for (int k = 0; k < 3; ++k) {
      int u = s.faces[f][k], v = s.faces[f][(k + 1) % 3];
      double len = s.face_lengths[f][(k + 2) % 3];
      acc[{std::min(u, v), std::max(u, v)}] = len;
    }
  for (const auto& [key, len] : acc) s.edges.push_back({key.first, key.second, len});
  return s;
}

SurfaceMesh build_flat_patch(int n) {
  if (n < 1 || n > 2048) throw ConfigError("flat patch resolution out of range");
  const double h = 1.0 / n;
  SurfaceMesh s;
  s.metric = SurfaceMesh::Metric::Euclidean;
  s.genus = 0;
  s.closed = false;
  auto vid = [&](int i, int j) { return i * (n + 1) + j; };
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) s.unid_points.push_back(cplx(i * h, j * h));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      s.unid_faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      s.unid_faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  const int nv = (n + 1) * (n + 1);
  s.unid_class.resize(nv);
  for (int i = 0; i < nv; ++i) s.unid_class[i] = i;
  s.vertices = s.unid_points;
  s.curvature.assign(nv, 0.0);
  finish_mesh(s, {}, {});
  return s;
}

bool ValidationReport::all_ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ValidationReport validate_surface(const SurfaceMesh& s) {
  ValidationReport r;
  auto add = [&](const std::string& name, double measured, double tol, bool pass) {
    r.checks.push_back({name, pass, measured, tol});
  };

  if (s.closed) {
    const int expected_chi = 2 - 2 * s.genus;
    const double chi_defect = std::abs(s.euler_characteristic() - expected_chi);
    add("euler-characteristic", chi_defect, 0.0, chi_defect == 0.0);
  }

  double min_len = std::numeric_limits<double>::infinity();
  for (const auto& e : s.edges) min_len = std::min(min_len, e.length);
  add("edge-lengths-positive", min_len, 0.0, min_len > 0.0);

  double min_margin = std::numeric_limits<double>::infinity();
  for (const auto& L : s.face_lengths) {
    min_margin = std::min(min_margin, L[1] + L[2] - L[0]);
    min_margin = std::min(min_margin, L[0] + L[2] - L[1]);
    min_margin = std::min(min_margin, L[0] + L[1] - L[2]);
  }
  add("triangle-inequality-margin", min_margin, 0.0, min_margin > 0.0);

  if (s.closed) {
    const double expected = 2.0 * M_PI * (2 - 2 * s.genus);
    double gb = 0;
    for (int i = 0; i < s.vertex_count(); ++i) gb += s.curvature[i] * s.vertex_area[i];
    const double defect = std::abs(gb - expected);
    const double tol = 1e-6 * std::max(1.0, std::abs(expected));
    add("gauss-bonnet-defect", defect, tol, defect <= tol);
  }

  if (s.has_group) {
    double det_defect = 0;
    for (const auto& g : s.gens_real) det_defect = std::max(det_defect, std::abs(g.determinant() - 1.0));
    add("generator-determinant", det_defect, 1e-12, det_defect <= 1e-12);

    const Mat2d rel = s.gens_real[0] * s.gens_real[1] * s.gens_real[0].inverse() *
                      s.gens_real[1].inverse() * s.gens_real[2] * s.gens_real[3] *
                      s.gens_real[2].inverse() * s.gens_real[3].inverse();
    const Mat2d id = Mat2d::Identity();
    const double res = std::min((rel - id).cwiseAbs().maxCoeff(), (rel + id).cwiseAbs().maxCoeff());
    add("pairing-relation-residual", res, 1e-10, res <= 1e-10);

    // paired sides must carry matching vertex distributions
    double match = 0;
    for (const auto& rec : s.pairings) {
      const Mat2c to_source =
          rec.inverse ? s.gens_disk[rec.generator] : Mat2c(s.gens_disk[rec.generator].inverse());
      for (size_t i = 0; i < rec.target_vertices.size(); ++i) {
        const cplx q = disk::apply(to_source, s.unid_points[rec.target_vertices[i]]);
        match = std::max(match, std::abs(q - s.unid_points[rec.source_vertices[i]]));
      }
    }
    add("pairing-vertex-match", match, 1e-9, match <= 1e-9);
  }

  if (s.closed) {
    const double expected_area =
        s.metric == SurfaceMesh::Metric::Hyperbolic ? -2.0 * M_PI * (2 - 2 * s.genus) : 1.0;
    const double area_defect = std::abs(s.total_area() - expected_area);
    add("total-area", area_defect, 1e-9, area_defect <= 1e-9);
  }
  return r;
}

std::vector<double> mesh_distance(const SurfaceMesh& s, const std::vector<int>& sources) {
  const int n = s.vertex_count();
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : s.edges) {
    adj[e.u].push_back({e.v, e.length});
    adj[e.v].push_back({e.u, e.length});
  }
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (int v : sources) {
    if (v < 0 || v >= n) throw DomainError("mesh_distance: source vertex out of range");
    dist[v] = 0;
    heap.push({0.0, v});
  }
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, w] : adj[u])
      if (dist[u] + w < dist[v]) {
        dist[v] = dist[u] + w;
        heap.push({dist[v], v});
      }
  }
  return dist;
}

int find_vertex_near(const SurfaceMesh& s, cplx p, double tol) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < s.vertex_count(); ++i) {
    double d = std::abs(s.vertices[i] - p);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (best_d > tol) throw DomainError("find_vertex_near: no vertex within tolerance");
  return best;
}

std::string mesh_json(const SurfaceMesh& s) {
  std::ostringstream os;
  os.precision(17);
  os << "{\n  \"vertices\": [";
  for (int i = 0; i < s.vertex_count(); ++i)
    os << (i ? ", " : "") << "[" << s.vertices[i].real() << ", " << s.vertices[i].imag() << "]";
  os << "],\n  \"faces\": [";
  for (size_t i = 0; i < s.faces.size(); ++i)
    os << (i ? ", " : "") << "[" << s.faces[i][0] << ", " << s.faces[i][1] << ", " << s.faces[i][2]
       << "]";
  os << "],\n  \"pairings\": [";
  for (size_t i = 0; i < s.pairings.size(); ++i) {
    const auto& p = s.pairings[i];
    os << (i ? ", " : "") << "{\"generator\": " << p.generator
       << ", \"inverse\": " << (p.inverse ? "true" : "false")
       << ", \"target_side\": " << p.target_side << ", \"source_side\": " << p.source_side << "}";
  }
  os << "],\n  \"generators\": [";
  if (s.has_group)
    for (int g = 0; g < 4; ++g) {
      const auto& m = s.gens_real[g];
      os << (g ? ", " : "") << "[" << m(0, 0) << ", " << m(0, 1) << ", " << m(1, 0) << ", "
         << m(1, 1) << "]";
    }
  os << "]\n}\n";
  return os.str();
}

}  // namespace adsmax
