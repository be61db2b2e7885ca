#include "entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <unordered_map>

#include "errors.hpp"

namespace adsmax {

namespace {

// tolerance-robust set of group elements keyed by sign-normalized matrices:
// quantized 4-component key with neighbor-cell probing, exact-tolerance verify
class ElementSet {
 public:
  using Key = std::array<int64_t, 4>;

  int find(const Mat2c& m) const {
    const auto v = normalize(m);
    Key q = quantize(v);
    for (int d0 = -1; d0 <= 1; ++d0)
      for (int d1 = -1; d1 <= 1; ++d1)
        for (int d2 = -1; d2 <= 1; ++d2)
          for (int d3 = -1; d3 <= 1; ++d3) {
            auto it = cells_.find({q[0] + d0, q[1] + d1, q[2] + d2, q[3] + d3});
            if (it == cells_.end()) continue;
            for (int idx : it->second)
              if (close(items_[idx], v)) return payload_[idx];
          }
    return -1;
  }

  void insert(const Mat2c& m, int payload) {
    const auto v = normalize(m);
    items_.push_back(v);
    payload_.push_back(payload);
    cells_[quantize(v)].push_back(static_cast<int>(items_.size()) - 1);
  }

 private:
  static std::array<double, 8> normalize(const Mat2c& m) {
    std::array<double, 8> v = {m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(),
                               m(1, 0).real(), m(1, 0).imag(), m(1, 1).real(), m(1, 1).imag()};
    double nrm = 0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    for (double x : v) {
      if (std::abs(x) > 1e-8 * nrm) {
        if (x < 0)
          for (double& y : v) y = -y;
        break;
      }
    }
    return v;
  }
  static Key quantize(const std::array<double, 8>& v) {
    Key k;
    for (int i = 0; i < 4; ++i) k[i] = static_cast<int64_t>(std::floor(v[i] / kCell));
    return k;
  }
  static bool close(const std::array<double, 8>& a, const std::array<double, 8>& b) {
    double nrm = 0;
    for (double x : a) nrm += x * x;
    const double tol = 1e-8 * std::max(1.0, std::sqrt(nrm));
    for (int i = 0; i < 8; ++i)
      if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
  }
  struct KeyHash {
    size_t operator()(const Key& k) const {
      uint64_t h = 1469598103934665603ull;
      for (int64_t x : k) {
        h ^= static_cast<uint64_t>(x);
        h *= 1099511628211ull;
      }
      return static_cast<size_t>(h);
    }
  };
  static constexpr double kCell = 1e-5;
  std::vector<std::array<double, 8>> items_;
  std::vector<int> payload_;
  std::unordered_map<Key, std::vector<int>, KeyHash> cells_;
};

struct Words {
  std::vector<std::string> text;
  std::vector<Mat2c> matrix;
  ElementSet set;
};

constexpr char kLetters[9] = "abcdABCD";

int inverse_letter(int l) { return (l + 4) % 8; }

Words enumerate_elements(const SurfaceMesh& s, int radius) {
  Words w;
  w.text.push_back("");
  w.matrix.push_back(Mat2c::Identity());
  w.set.insert(Mat2c::Identity(), 0);
  std::vector<int> frontier = {0};
  std::vector<int> last_letter = {-1};
  for (int r = 0; r < radius; ++r) {
    std::vector<int> next;
    for (int idx : frontier) {
      for (int l = 0; l < 8; ++l) {
        if (last_letter[idx] >= 0 && inverse_letter(last_letter[idx]) == l) continue;
        const Mat2c m = w.matrix[idx] * (l < 4 ? s.gens_disk[l] : Mat2c(s.gens_disk[l - 4].inverse()));
        if (w.set.find(m) >= 0) continue;
        w.text.push_back(w.text[idx] + kLetters[l]);
        w.matrix.push_back(m);
        w.set.insert(m, static_cast<int>(w.text.size()) - 1);
        next.push_back(static_cast<int>(w.text.size()) - 1);
        last_letter.push_back(l);
      }
    }
    frontier = std::move(next);
  }
  return w;
}

struct UnionFind64 {
  std::vector<int64_t> parent;
  explicit UnionFind64(int64_t n) : parent(n) {
    for (int64_t i = 0; i < n; ++i) parent[i] = i;
  }
  int64_t find(int64_t x) {
    int64_t root = x;
    while (parent[root] != root) root = parent[root];
    while (parent[x] != root) {
      int64_t next = parent[x];
      parent[x] = root;
      x = next;
    }
    return root;
  }
  void unite(int64_t x, int64_t y) {
    int64_t rx = find(x), ry = find(y);
    if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
  }
};

}  // namespace

LiftedGraph build_orbit_graph(const SurfaceMesh& s, const Eigen::VectorXd& u, int word_radius,
                              double weight_scale) {
  if (!s.has_group)
    throw ConfigError("build_orbit_graph: surface carries no side-pairing group");
  if (u.size() != s.vertex_count()) throw ConfigError("build_orbit_graph: u size mismatch");
  if (word_radius < 0) throw ConfigError("build_orbit_graph: word_radius must be nonnegative");
  if (word_radius > kMaxWordRadius) {
    double est = 1;
    for (int i = 0; i < word_radius; ++i) est *= 7;
    est *= 8.0 / 7.0 * static_cast<double>(s.unid_points.size());
    throw ResourceError("build_orbit_graph: word_radius " + std::to_string(word_radius) +
                        " exceeds cap " + std::to_string(kMaxWordRadius) + " (about " +
                        std::to_string(static_cast<long long>(est)) + " nodes)");
  }

  Words words = enumerate_elements(s, word_radius);
  const int C = static_cast<int>(words.text.size());
  const int64_t nv = static_cast<int64_t>(s.unid_points.size());

  LiftedGraph g;
  g.words = words.text;
  g.word_radius = word_radius;
  g.base_vertex = 0;  // center vertex: interior, unambiguous

  UnionFind64 uf(static_cast<int64_t>(C) * nv);
  std::vector<int64_t> unsafe_raw;
  for (int ci = 0; ci < C; ++ci) {
    for (int l = 0; l < 8; ++l) {
      const Mat2c m =
          words.matrix[ci] * (l < 4 ? s.gens_disk[l] : Mat2c(s.gens_disk[l - 4].inverse()));
      const int cj = words.set.find(m);
      const auto& rec = s.pairings[l];
      if (cj < 0) {
        for (int p : rec.target_vertices) unsafe_raw.push_back(ci * nv + p);
        continue;
      }
      for (size_t i = 0; i < rec.target_vertices.size(); ++i)
        uf.unite(ci * nv + rec.target_vertices[i],
                 static_cast<int64_t>(cj) * nv + rec.source_vertices[i]);
    }
  }

  // compress node ids
  std::vector<int64_t> node(static_cast<size_t>(C) * nv);
  {
    std::vector<int64_t> root_to_node(static_cast<size_t>(C) * nv, -1);
    int64_t next_id = 0;
    for (int64_t x = 0; x < static_cast<int64_t>(C) * nv; ++x) {
      int64_t r = uf.find(x);
      if (root_to_node[r] < 0) root_to_node[r] = next_id++;
      node[x] = root_to_node[r];
    }
    g.node_count = next_id;
  }

  // per-copy edge template from the unidentified mesh (weights are copy
  // independent since u lives on the quotient)
  std::map<std::pair<int, int>, double> tmpl;
  for (size_t f = 0; f < s.unid_faces.size(); ++f) {
    const auto& uf3 = s.unid_faces[f];
    const auto& L = s.face_lengths[f];
    const std::array<std::tuple<int, int, double>, 3> es = {
        std::make_tuple(uf3[1], uf3[2], L[0]), std::make_tuple(uf3[2], uf3[0], L[1]),
        std::make_tuple(uf3[0], uf3[1], L[2])};
    for (const auto& [a, b, len] : es) {
      const double wt = weight_scale * len *
                        std::exp(0.5 * (u[s.unid_class[a]] + u[s.unid_class[b]]));
      tmpl[{std::min(a, b), std::max(a, b)}] = wt;
    }
  }

  // assemble CSR over undirected edges (dedup parallel entries via sort+unique)
  std::vector<std::tuple<int64_t, int64_t, double>> all_edges;
  all_edges.reserve(static_cast<size_t>(C) * tmpl.size());
  for (int ci = 0; ci < C; ++ci) {
    const int64_t base = static_cast<int64_t>(ci) * nv;
    for (const auto& [key, wt] : tmpl) {
      const int64_t a = node[base + key.first], b = node[base + key.second];
      if (a == b) continue;
      all_edges.emplace_back(std::min(a, b), std::max(a, b), wt);
    }
  }
  std::sort(all_edges.begin(), all_edges.end());
  all_edges.erase(std::unique(all_edges.begin(), all_edges.end()), all_edges.end());

  std::vector<int64_t> degree(g.node_count, 0);
  for (const auto& [a, b, wt] : all_edges) {
    ++degree[a];
    ++degree[b];
  }
  g.adj_offset.assign(g.node_count + 1, 0);
  for (int64_t i = 0; i < g.node_count; ++i) g.adj_offset[i + 1] = g.adj_offset[i] + degree[i];
  g.adj_node.resize(all_edges.size() * 2);
  g.adj_weight.resize(all_edges.size() * 2);
  {
    std::vector<int64_t> cursor(g.adj_offset.begin(), g.adj_offset.end() - 1);
    for (const auto& [a, b, wt] : all_edges) {
      g.adj_node[cursor[a]] = b;
      g.adj_weight[cursor[a]++] = wt;
      g.adj_node[cursor[b]] = a;
      g.adj_weight[cursor[b]++] = wt;
    }
  }

  g.base_node = node[g.base_vertex];
  g.orbit_nodes.resize(C);
  for (int ci = 0; ci < C; ++ci) g.orbit_nodes[ci] = node[static_cast<int64_t>(ci) * nv + g.base_vertex];
  std::sort(unsafe_raw.begin(), unsafe_raw.end());
  for (int64_t x : unsafe_raw) {
    int64_t nd = node[x];
    if (g.unsafe_nodes.empty() || g.unsafe_nodes.back() != nd) g.unsafe_nodes.push_back(nd);
  }
  std::sort(g.unsafe_nodes.begin(), g.unsafe_nodes.end());
  g.unsafe_nodes.erase(std::unique(g.unsafe_nodes.begin(), g.unsafe_nodes.end()),
                       g.unsafe_nodes.end());
  g.frontier_radius = 0;  // filled by orbit_distances
  return g;
}

std::vector<OrbitDistance> orbit_distances(LiftedGraph& g) {
  std::vector<double> dist(g.node_count, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int64_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist[g.base_node] = 0;
  heap.push({0.0, g.base_node});
  while (!heap.empty()) {
    auto [d, n] = heap.top();
    heap.pop();
    if (d > dist[n]) continue;
    for (int64_t k = g.adj_offset[n]; k < g.adj_offset[n + 1]; ++k) {
      const int64_t m = g.adj_node[k];
      const double nd = d + g.adj_weight[k];
      if (nd < dist[m]) {
        dist[m] = nd;
        heap.push({nd, m});
      }
    }
  }
  for (int64_t i = 0; i < g.node_count; ++i)
    if (!std::isfinite(dist[i]))
      throw SolverError("orbit_distances: lifted graph is disconnected (construction bug)");

  double fr = std::numeric_limits<double>::infinity();
  for (int64_t n : g.unsafe_nodes) fr = std::min(fr, dist[n]);
  g.frontier_radius = fr;

  std::vector<OrbitDistance> out;
  out.reserve(g.orbit_nodes.size());
  for (size_t ci = 0; ci < g.orbit_nodes.size(); ++ci)
    out.push_back({g.words[ci], dist[g.orbit_nodes[ci]], dist[g.orbit_nodes[ci]] <= fr});
  std::sort(out.begin(), out.end(), [](const OrbitDistance& a, const OrbitDistance& b) {
    return a.distance < b.distance || (a.distance == b.distance && a.word < b.word);
  });
  return out;
}

EntropyEstimate entropy_estimate(const std::vector<double>& distances, double r_min,
                                 double r_max) {
  if (!(r_min >= 0) || !(r_max > r_min)) throw ConfigError("entropy_estimate: bad window");
  std::vector<double> ds(distances);
  std::sort(ds.begin(), ds.end());

  EntropyEstimate e;
  e.r_min = r_min;
  e.r_max = r_max;

  // samples: orbit distances inside the window, each with its cumulative count
  std::vector<double> R, Y;
  int distinct = 0;
  double last = -1;
  for (size_t i = 0; i < ds.size(); ++i) {
    const double d = ds[i];
    if (d <= 0 || d < r_min || d > r_max) continue;
    R.push_back(d);
    Y.push_back(std::log(static_cast<double>(i + 1)));
    if (d != last) {
      ++distinct;
      last = d;
    }
  }
  if (distinct < 3)
    throw DomainError("entropy_estimate: window holds fewer than 3 distinct count increments");

  const auto n = static_cast<double>(R.size());
  double rm = 0, ym = 0;
  for (double r : R) rm += r;
  for (double y : Y) ym += y;
  rm /= n;
  ym /= n;
  double num = 0, den = 0;
  for (size_t i = 0; i < R.size(); ++i) {
    num += (R[i] - rm) * (Y[i] - ym);
    den += (R[i] - rm) * (R[i] - rm);
  }
  e.e_hat = num / den;
  double ss = 0;
  for (size_t i = 0; i < R.size(); ++i) {
    const double pred = ym + e.e_hat * (R[i] - rm);
    ss += (Y[i] - pred) * (Y[i] - pred);
  }
  e.fit_residual = std::sqrt(ss / n);
  e.samples = static_cast<int>(R.size());

  // jump-point count table over [0, r_max]
  int64_t cnt = 0;
  for (size_t i = 0; i < ds.size(); ++i) {
    if (ds[i] > r_max) break;
    ++cnt;
    if (i + 1 == ds.size() || ds[i + 1] != ds[i]) e.counts.emplace_back(ds[i], cnt);
  }
  e.count_at_rmax = static_cast<double>(cnt);
  return e;
}

}  // namespace adsmax
