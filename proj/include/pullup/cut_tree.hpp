#pragma once

#include "pullup/error.hpp"
#include "pullup/mesh.hpp"

#include <array>
#include <limits>
#include <cstdint>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

namespace pullup {

enum class Heuristic { steepest_edge, greatest_increase, bfs_largest_face };

inline constexpr std::array<Heuristic, 3> kAllHeuristics{Heuristic::steepest_edge, Heuristic::greatest_increase,
                                                         Heuristic::bfs_largest_face};

inline std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::steepest_edge: return "steepest-edge";
    case Heuristic::greatest_increase: return "greatest-increase";
    case Heuristic::bfs_largest_face: return "bfs-largest-face";
  }
  return "?";
}

inline std::optional<Heuristic> heuristic_from_string(std::string_view s) {
  for (Heuristic h : kAllHeuristics) {
    if (to_string(h) == s) return h;
  }
  return std::nullopt;
}

/// Complementary edge sets: fold edges span the face-adjacency graph as a tree; on
/// a closed mesh the cut edges then span the vertices as a tree.
struct CutTree {
  std::vector<int> fold_edges;  ///< ascending edge ids
  std::vector<int> cut_edges;   ///< ascending edge ids, includes border edges of open meshes
  int root_face = 0;
  Heuristic heuristic = Heuristic::bfs_largest_face;
  Vec3 direction = Vec3::Zero();  ///< objective direction for the vertex heuristics
  int direction_attempt = 0;
};

/// Largest-area face; near-ties (relative 1e-9) go to the lowest id.
inline int largest_face(const Mesh& mesh) {
  int best = 0;
  double best_area = -1.0;
  for (int f = 0; f < mesh.face_count(); ++f) {
    const double a = mesh.face_area(f);
    if (a > best_area * (1.0 + 1e-9)) {
      best = f;
      best_area = a;
    }
  }
  return best;
}

namespace detail {

inline bool is_dual_edge(const Edge& e) { return e.face_count() == 2 && e.sides[0].face != e.sides[1].face; }

inline CutTree finish_tree(const Mesh& mesh, std::vector<bool> fold, CutTree tree) {
  for (int e = 0; e < mesh.edge_count(); ++e) (fold[e] ? tree.fold_edges : tree.cut_edges).push_back(e);
  return tree;
}

/// Dual spanning tree by Kruskal, taking non-preferred edges before preferred cuts.
inline std::vector<bool> dual_tree_avoiding(const Mesh& mesh, const std::vector<bool>& prefer_cut) {
  DisjointSets faces(mesh.face_count());
  std::vector<bool> fold(mesh.edge_count(), false);
  for (int pass = 0; pass < 2; ++pass) {
    for (int e = 0; e < mesh.edge_count(); ++e) {
      const Edge& edge = mesh.edges()[e];
      if (!is_dual_edge(edge) || prefer_cut[e] != (pass == 1)) continue;
      if (faces.unite(edge.sides[0].face, edge.sides[1].face)) fold[e] = true;
    }
  }
  return fold;
}

/// Per-vertex preferred cut edge under objective direction c; nullopt on ties.
inline std::optional<std::vector<bool>> preferred_cuts(const Mesh& mesh, const Vec3& c, bool normalize = true) {
  const int nv = mesh.vertex_count();
  const double scale = std::max(mesh.bbox_diagonal(), 1e-300);
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < mesh.edge_count(); ++e) {
    incident[mesh.edges()[e].v0].push_back(e);
    incident[mesh.edges()[e].v1].push_back(e);
  }
  int top = -1;
  double top_h = -std::numeric_limits<double>::infinity();
  double second_h = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < nv; ++v) {
    if (incident[v].empty()) continue;
    const double h = c.dot(mesh.vertices()[v]);
    if (h > top_h) {
      second_h = top_h;
      top_h = h;
      top = v;
    } else if (h > second_h) {
      second_h = h;
    }
  }
  if (top_h - second_h <= 1e-12 * scale) return std::nullopt;

  std::vector<bool> cut(mesh.edge_count(), false);
  for (int v = 0; v < nv; ++v) {
    if (v == top || incident[v].empty()) continue;
    int best = -1;
    double best_s = -std::numeric_limits<double>::infinity();
    double runner = -std::numeric_limits<double>::infinity();
    for (int e : incident[v]) {
      const Edge& edge = mesh.edges()[e];
      const int w = edge.v0 == v ? edge.v1 : edge.v0;
      const Vec3 d = mesh.vertices()[w] - mesh.vertices()[v];
      const double s = normalize ? c.dot(d) / d.norm() : c.dot(d) / scale;
      if (s > best_s) {
        runner = best_s;
        best_s = s;
        best = e;
      } else if (s > runner) {
        runner = s;
      }
    }
    if (best_s - runner <= 1e-12) return std::nullopt;
    cut[best] = true;
  }
  return cut;
}

/// Greatest-increase tree: Prim growth from the lowest vertex (from the whole border on
/// open meshes), always adding the frontier edge with the largest height gain along c.
/// Returns the tree edges as preferred cuts; nullopt when the lowest vertex is tied.
inline std::optional<std::vector<bool>> greatest_increase_cuts(const Mesh& mesh, const Vec3& c) {
  const int nv = mesh.vertex_count();
  const double scale = std::max(mesh.bbox_diagonal(), 1e-300);
  std::vector<std::vector<int>> incident(nv);
  for (int e = 0; e < mesh.edge_count(); ++e) {
    incident[mesh.edges()[e].v0].push_back(e);
    incident[mesh.edges()[e].v1].push_back(e);
  }
  std::vector<bool> in_tree(nv, false), cut(mesh.edge_count(), false);
  int lowest = -1;
  double low_h = std::numeric_limits<double>::infinity(), second = low_h;
  for (int v = 0; v < nv; ++v) {
    if (incident[v].empty()) continue;
    const double h = c.dot(mesh.vertices()[v]);
    if (h < low_h) {
      second = low_h;
      low_h = h;
      lowest = v;
    } else if (h < second) {
      second = h;
    }
  }
  if (lowest < 0) return cut;
  bool any_border = false;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (mesh.edges()[e].face_count() != 1) continue;
    in_tree[mesh.edges()[e].v0] = in_tree[mesh.edges()[e].v1] = true;
    any_border = true;
  }
  if (!any_border) {
    if (second - low_h <= 1e-12 * scale) return std::nullopt;
    in_tree[lowest] = true;
  }
  for (;;) {
    int best = -1;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (int e = 0; e < mesh.edge_count(); ++e) {
      const Edge& edge = mesh.edges()[e];
      if (edge.face_count() != 2 || in_tree[edge.v0] == in_tree[edge.v1]) continue;
      const int from = in_tree[edge.v0] ? edge.v0 : edge.v1;
      const int to = edge.v0 == from ? edge.v1 : edge.v0;
      const double gain = c.dot(mesh.vertices()[to] - mesh.vertices()[from]) / scale;
      // equal gains (parallel edges) go to the lowest edge id
      if (gain > best_gain + 1e-12) {
        best_gain = gain;
        best = e;
      }
    }
    if (best < 0) break;
    cut[best] = true;
    in_tree[mesh.edges()[best].v0] = in_tree[mesh.edges()[best].v1] = true;
  }
  return cut;
}

}  // namespace detail

inline constexpr int kDirectionAttempts = 16;

/// Builds the cut/fold tree for one heuristic.
///
/// steepest-edge draws an objective direction c from the seed and cuts, at every vertex
/// but the highest, the incident edge of steepest ascent. greatest-increase grows a
/// vertex tree from the lowest vertex, each step attaching the vertex reached by the
/// greatest height increase. The fold tree is the dual complement; where the cuts are
/// not a vertex tree (non-convex input) it is completed by Kruskal, admitting the
/// preferred cuts as folds last.
/// bfs-largest-face folds along a BFS tree of the dual graph rooted at the largest face.
inline CutTree build_cut_tree(const Mesh& mesh, Heuristic heuristic, std::uint64_t seed) {
  if (mesh.face_count() == 0) throw Error(ErrorCode::invalid_argument, "mesh has no faces");
  CutTree tree;
  tree.heuristic = heuristic;
  tree.root_face = largest_face(mesh);

  if (heuristic == Heuristic::bfs_largest_face) {
    std::vector<bool> fold(mesh.edge_count(), false);
    std::vector<bool> seen(mesh.face_count(), false);
    std::queue<int> q;
    q.push(tree.root_face);
    seen[tree.root_face] = true;
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      for (std::size_t i = 0; i < mesh.faces()[f].size(); ++i) {
        const int e = mesh.side_edge(f, static_cast<int>(i));
        const Edge& edge = mesh.edges()[e];
        if (!detail::is_dual_edge(edge)) continue;
        const int g = edge.other_face(f);
        if (seen[g]) continue;
        seen[g] = true;
        fold[e] = true;
        q.push(g);
      }
    }
    return detail::finish_tree(mesh, std::move(fold), std::move(tree));
  }

  for (int attempt = 0; attempt < kDirectionAttempts; ++attempt) {
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Vec3 c = rng.unit_vector();
    auto cuts = heuristic == Heuristic::steepest_edge ? detail::preferred_cuts(mesh, c, true)
                                                      : detail::greatest_increase_cuts(mesh, c);
    if (!cuts) continue;
    tree.direction = c;
    tree.direction_attempt = attempt;
    return detail::finish_tree(mesh, detail::dual_tree_avoiding(mesh, *cuts), std::move(tree));
  }
  throw Error(ErrorCode::degenerate_direction,
              "no tie-free objective direction after " + std::to_string(kDirectionAttempts) + " attempts");
}

}  // namespace pullup
