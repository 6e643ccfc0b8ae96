#pragma once

#include "pullup/error.hpp"
#include "pullup/mesh.hpp"
#include "pullup/net.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace pullup {

/// Net vertices (copies of one mesh vertex) that the string must draw together.
struct JoinSet {
  int mesh_vertex = -1;
  std::vector<int> members;  ///< ascending net vertex ids
  std::vector<int> removed;  ///< members dropped by pruning
  int rigidity_depth = 0;    ///< minimum depth over members
  bool pruned = false;

  bool is_active(int v) const { return std::find(removed.begin(), removed.end(), v) == removed.end(); }
  std::vector<int> active() const {
    std::vector<int> out;
    for (int v : members) {
      if (is_active(v)) out.push_back(v);
    }
    return out;
  }
};

struct JoinAnalysis {
  std::vector<JoinSet> sets;  ///< ordered by mesh vertex
  std::vector<int> depth;     ///< per net vertex
  std::vector<int> set_of;    ///< per net vertex: index into sets, -1 if none

  bool is_joined(int v) const {
    return depth[v] == 0 || (set_of[v] >= 0 && !sets[set_of[v]].pruned && sets[set_of[v]].is_active(v));
  }
};

namespace detail {

/// Per net vertex: (mesh edge, far end) of each incident boundary edge on a two-face edge.
inline std::vector<std::vector<std::pair<int, int>>> boundary_incidence(const Mesh& mesh, const Net& net) {
  std::vector<std::vector<std::pair<int, int>>> inc(net.vertices.size());
  for (const NetEdge& e : net.boundary) {
    if (mesh.edges()[e.mesh_edge].face_count() != 2) continue;
    inc[e.a].push_back({e.mesh_edge, e.b});
    inc[e.b].push_back({e.mesh_edge, e.a});
  }
  return inc;
}

}  // namespace detail

/// Rigidity-depth search. Net vertices whose mesh vertex has a single copy in the net
/// get depth 0. From every marked group, each cut edge whose two net copies both touch
/// the group leads to two far-end copies of one mesh vertex; those are joined one level
/// deeper. Joined groups are merged and the search repeats until nothing changes.
inline JoinAnalysis compute_join_sets(const Mesh& mesh, const Net& net) {
  const int nv = static_cast<int>(net.vertices.size());
  std::vector<int> copies(mesh.vertex_count(), 0);
  for (const NetVertex& v : net.vertices) ++copies[v.mesh_vertex];

  constexpr int kUnmarked = -1;
  JoinAnalysis out;
  out.depth.assign(nv, kUnmarked);
  for (int v = 0; v < nv; ++v) {
    if (copies[net.vertices[v].mesh_vertex] == 1) out.depth[v] = 0;
  }
  const auto inc = detail::boundary_incidence(mesh, net);
  DisjointSets groups(nv);

  bool changed = true;
  int rounds = 0;
  while (changed) {
    if (rounds++ > nv + 1) break;
    changed = false;
    std::map<int, std::vector<int>> members;
    for (int v = 0; v < nv; ++v) {
      if (out.depth[v] != kUnmarked) members[groups.find(v)].push_back(v);
    }
    for (const auto& [root, group] : members) {
      int d = out.depth[group.front()];
      for (int v : group) d = std::min(d, out.depth[v]);
      std::map<int, std::vector<int>> far_by_edge;
      for (int v : group) {
        for (auto [e, far] : inc[v]) far_by_edge[e].push_back(far);
      }
      for (const auto& [e, far] : far_by_edge) {
        if (far.size() != 2 || far[0] == far[1]) continue;
        for (int f : far) {
          if (out.depth[f] == kUnmarked || out.depth[f] > d + 1) {
            out.depth[f] = d + 1;
            changed = true;
          }
        }
        if (groups.unite(far[0], far[1])) changed = true;
      }
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (out.depth[v] == kUnmarked) {
      throw Error(ErrorCode::algorithm_divergence, "net vertex " + std::to_string(v) + " never reached by the depth search");
    }
  }

  std::map<int, std::vector<int>> by_root;
  for (int v = 0; v < nv; ++v) by_root[groups.find(v)].push_back(v);
  for (auto& [root, group] : by_root) {
    if (group.size() < 2) continue;
    JoinSet s;
    s.mesh_vertex = net.vertices[group.front()].mesh_vertex;
    s.members = group;
    s.rigidity_depth = out.depth[group.front()];
    for (int v : group) s.rigidity_depth = std::min(s.rigidity_depth, out.depth[v]);
    out.sets.push_back(std::move(s));
  }
  std::sort(out.sets.begin(), out.sets.end(), [](const JoinSet& a, const JoinSet& b) {
    return a.mesh_vertex != b.mesh_vertex ? a.mesh_vertex < b.mesh_vertex : a.members < b.members;
  });
  out.set_of.assign(nv, -1);
  for (std::size_t i = 0; i < out.sets.size(); ++i) {
    for (int v : out.sets[i].members) out.set_of[v] = static_cast<int>(i);
  }
  return out;
}

/// Removes joins the structure does not need. Taking member m out of its set removes
/// R = {m}, or every remaining member when only two are left. R is removed only if
/// some vertex of R shares a boundary edge with a joined vertex of greater depth, and
/// every face touching R keeps at least three joined vertices. A vertex counts as
/// joined on a face when it has depth 0, is an active member of an unpruned set, or is
/// shared with another face of the net through a crease. Candidates are scanned by
/// descending depth, then ascending id, until a pass removes nothing.
inline JoinAnalysis prune_join_sets(const Net& net, JoinAnalysis analysis) {
  const int nv = static_cast<int>(net.vertices.size());
  std::vector<std::vector<int>> neighbours(nv);
  for (const NetEdge& e : net.boundary) {
    neighbours[e.a].push_back(e.b);
    neighbours[e.b].push_back(e.a);
  }
  auto counts_on_face = [&](int v) { return analysis.is_joined(v) || net.vertices[v].faces.size() >= 2; };
  auto face_joined = [&](int f, const std::vector<int>& without) {
    int n = 0;
    for (int v : net.faces[f].net_vertices) {
      if (std::find(without.begin(), without.end(), v) != without.end()) continue;
      if (counts_on_face(v)) ++n;
    }
    return n;
  };

  std::vector<int> order;
  for (const JoinSet& s : analysis.sets) order.insert(order.end(), s.members.begin(), s.members.end());
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return analysis.depth[a] != analysis.depth[b] ? analysis.depth[a] > analysis.depth[b] : a < b;
  });

  bool changed = true;
  while (changed) {
    changed = false;
    for (int m : order) {
      JoinSet& s = analysis.sets[analysis.set_of[m]];
      if (s.pruned || !s.is_active(m)) continue;
      const std::vector<int> act = s.active();
      const std::vector<int> removal = act.size() > 2 ? std::vector<int>{m} : act;

      bool deeper = false;
      for (int x : removal) {
        for (int y : neighbours[x]) {
          if (analysis.depth[y] > analysis.depth[x] && analysis.is_joined(y) &&
              std::find(removal.begin(), removal.end(), y) == removal.end()) {
            deeper = true;
          }
        }
      }
      if (!deeper) continue;

      std::vector<int> removed_unshared;
      for (int x : removal) {
        if (net.vertices[x].faces.size() < 2) removed_unshared.push_back(x);
      }
      bool faces_ok = true;
      for (int x : removal) {
        for (int f : net.vertices[x].faces) {
          if (face_joined(f, removed_unshared) < 3) faces_ok = false;
        }
      }
      if (!faces_ok) continue;

      for (int x : removal) s.removed.push_back(x);
      std::sort(s.removed.begin(), s.removed.end());
      s.pruned = s.active().empty();
      changed = true;
    }
  }
  return analysis;
}

}  // namespace pullup
