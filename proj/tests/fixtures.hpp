#pragma once

#include "pullup/pullup.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fixtures {

using namespace pullup;

inline std::filesystem::path data_dir() { return PULLUP_DATA_DIR; }
inline std::filesystem::path netlib_dir() { return data_dir() / "netlib"; }

inline Mesh unit_cube() {
  std::vector<Vec3> v{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  // bottom, top, front (y=0), right (x=1), back (y=1), left (x=0)
  std::vector<Face> f{{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
  return Mesh(v, f, "cube");
}

inline const char* cube_obj_text() {
  return "# unit cube\n"
         "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n"
         "f 1 4 3 2\nf 5 6 7 8\nf 1 2 6 5\nf 2 3 7 6\nf 3 4 8 7\nf 4 1 5 8\n";
}

inline Mesh regular_tetrahedron() {
  std::vector<Vec3> v{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<Face> f{{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
  return Mesh(v, f, "tetrahedron");
}

/// Fold tree of the given fold edges, rooted at `root`.
inline CutTree tree_from_folds(const Mesh& m, std::set<int> folds, int root) {
  CutTree t;
  t.root_face = root;
  for (int e = 0; e < m.edge_count(); ++e) (folds.count(e) ? t.fold_edges : t.cut_edges).push_back(e);
  return t;
}

inline int shared_edge(const Mesh& m, int f, int g) {
  for (int e = 0; e < m.edge_count(); ++e) {
    const Edge& edge = m.edges()[e];
    if (edge.face_count() == 2 && ((edge.sides[0].face == f && edge.sides[1].face == g) ||
                                   (edge.sides[0].face == g && edge.sides[1].face == f))) {
      return e;
    }
  }
  return -1;
}

/// Latin-cross net: bottom in the middle, four sides around it, top hinged to the front.
inline CutTree cube_cross_tree(const Mesh& cube) {
  std::set<int> folds;
  for (int side : {2, 3, 4, 5}) folds.insert(shared_edge(cube, 0, side));
  folds.insert(shared_edge(cube, 2, 1));
  return tree_from_folds(cube, folds, 0);
}

/// Star net: every face folded to face 0.
inline CutTree tetra_star_tree(const Mesh& tet) {
  std::set<int> folds;
  for (int g = 1; g < 4; ++g) folds.insert(shared_edge(tet, 0, g));
  return tree_from_folds(tet, folds, 0);
}

inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(netlib_dir())) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

/// Corpus files whose names start with one of the given numeric prefixes.
inline std::vector<std::filesystem::path> corpus_range(int first, int last) {
  std::vector<std::filesystem::path> out;
  for (const auto& p : corpus_files()) {
    const int id = std::stoi(p.filename().string().substr(0, 3));
    if (id >= first && id <= last) out.push_back(p);
  }
  return out;
}

inline std::vector<std::filesystem::path> platonic_files() { return corpus_range(0, 4); }
inline std::vector<std::filesystem::path> archimedean_files() { return corpus_range(5, 17); }

inline Mesh load_prepared(const std::filesystem::path& p) { return prepare_mesh(load_mesh(p)).mesh; }

/// Independent union-find used by the spanning-tree oracles.
struct Oracle_UF {
  std::vector<int> p;
  explicit Oracle_UF(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

/// True iff `edges` (pairs over n nodes) form a spanning tree.
inline bool is_spanning_tree(int n, const std::vector<std::pair<int, int>>& edges) {
  if (static_cast<int>(edges.size()) != n - 1) return false;
  Oracle_UF uf(n);
  for (auto [a, b] : edges) {
    if (!uf.join(a, b)) return false;
  }
  return true;
}

inline bool fold_tree_ok(const Mesh& m, const CutTree& t) {
  std::vector<std::pair<int, int>> dual;
  for (int e : t.fold_edges) dual.push_back({m.edges()[e].sides[0].face, m.edges()[e].sides[1].face});
  return is_spanning_tree(m.face_count(), dual);
}

inline bool cut_tree_ok(const Mesh& m, const CutTree& t) {
  std::vector<std::pair<int, int>> prim;
  for (int e : t.cut_edges) prim.push_back({m.edges()[e].v0, m.edges()[e].v1});
  return is_spanning_tree(m.vertex_count(), prim);
}

/// Grouping oracle: multiply-copied boundary net vertices partitioned by mesh vertex.
inline std::map<int, std::vector<int>> copies_by_mesh_vertex(const Net& net) {
  std::set<int> on_boundary;
  for (const NetEdge& e : net.boundary) {
    on_boundary.insert(e.a);
    on_boundary.insert(e.b);
  }
  std::map<int, std::vector<int>> all;
  for (int v = 0; v < static_cast<int>(net.vertices.size()); ++v) all[net.vertices[v].mesh_vertex].push_back(v);
  std::map<int, std::vector<int>> out;
  for (auto& [mv, list] : all) {
    if (list.size() < 2) continue;
    std::vector<int> b;
    for (int v : list) {
      if (on_boundary.count(v)) b.push_back(v);
    }
    out[mv] = b;
  }
  return out;
}

/// Separating-axis test for two convex polygons: true when their interiors overlap by
/// more than `depth` along every axis.
inline bool convex_overlap_sat(const std::vector<Vec2>& p, const std::vector<Vec2>& q, double depth) {
  auto axes_of = [](const std::vector<Vec2>& poly, std::vector<Vec2>& axes) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2 e = poly[(i + 1) % poly.size()] - poly[i];
      axes.push_back(Vec2(-e.y(), e.x()).normalized());
    }
  };
  std::vector<Vec2> axes;
  axes_of(p, axes);
  axes_of(q, axes);
  for (const Vec2& a : axes) {
    double p0 = 1e300, p1 = -1e300, q0 = 1e300, q1 = -1e300;
    for (const Vec2& x : p) {
      p0 = std::min(p0, a.dot(x));
      p1 = std::max(p1, a.dot(x));
    }
    for (const Vec2& x : q) {
      q0 = std::min(q0, a.dot(x));
      q1 = std::max(q1, a.dot(x));
    }
    if (std::min(p1, q1) - std::max(p0, q0) <= depth) return false;
  }
  return true;
}

inline std::vector<double> sorted_pairwise_distances(const std::vector<Vec3>& pts) {
  std::vector<double> d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) d.push_back((pts[i] - pts[j]).norm());
  }
  std::sort(d.begin(), d.end());
  return d;
}

/// Synthetic planner input: net vertices at random positions, grouped into join sets.
struct PathInstance {
  Net net;
  JoinAnalysis joins;
};

inline PathInstance random_path_instance(std::uint64_t seed, int max_holes = 8) {
  SplitMix64 rng(seed);
  PathInstance in;
  const int holes = 2 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_holes - 1));
  int placed = 0;
  while (placed < holes) {
    int size = 2 + static_cast<int>(rng.next() % 2);
    if (holes - placed - size == 1 || placed + size > holes) size = holes - placed;
    JoinSet s;
    s.mesh_vertex = static_cast<int>(in.joins.sets.size());
    for (int k = 0; k < size; ++k) {
      NetVertex v;
      v.position = Vec2(200 * rng.uniform() - 100, 200 * rng.uniform() - 100);
      v.mesh_vertex = s.mesh_vertex;
      s.members.push_back(static_cast<int>(in.net.vertices.size()));
      in.net.vertices.push_back(v);
    }
    s.rigidity_depth = 1;
    placed += size;
    in.joins.sets.push_back(s);
  }
  in.joins.depth.assign(in.net.vertices.size(), 1);
  in.joins.set_of.assign(in.net.vertices.size(), -1);
  for (std::size_t i = 0; i < in.joins.sets.size(); ++i) {
    for (int v : in.joins.sets[i].members) in.joins.set_of[v] = static_cast<int>(i);
  }
  return in;
}

/// Plain left-to-right cost of a hole sequence.
inline double naive_path_cost(const Net& net, const std::vector<int>& seq, double lambda) {
  double c = 0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    c += (net.vertices[seq[i + 1]].position - net.vertices[seq[i]].position).norm();
  }
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
    const Vec2 u = net.vertices[seq[i]].position - net.vertices[seq[i - 1]].position;
    const Vec2 w = net.vertices[seq[i + 1]].position - net.vertices[seq[i]].position;
    c += lambda * std::acos(std::clamp(u.dot(w) / (u.norm() * w.norm()), -1.0, 1.0));
  }
  return c;
}

/// Exhaustive minimum over set orderings and member orderings within each set.
inline double brute_force_path_cost(const PathInstance& in, double lambda) {
  std::vector<std::vector<int>> sets;
  for (const JoinSet& s : in.joins.sets) {
    if (!s.pruned) sets.push_back(s.active());
  }
  std::vector<int> order(sets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  double best = 1e300;
  do {
    std::vector<std::vector<int>> inner;
    for (int i : order) inner.push_back(sets[i]);
    for (auto& v : inner) std::sort(v.begin(), v.end());
    // odometer over the permutations of each set
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == inner.size()) {
        std::vector<int> seq;
        for (const auto& v : inner) seq.insert(seq.end(), v.begin(), v.end());
        best = std::min(best, naive_path_cost(in.net, seq, lambda));
        return;
      }
      do {
        rec(k + 1);
      } while (std::next_permutation(inner[k].begin(), inner[k].end()));
    };
    rec(0);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace fixtures
