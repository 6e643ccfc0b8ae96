#pragma once

#include "pullup/cut_tree.hpp"
#include "pullup/edge_geometry.hpp"
#include "pullup/error.hpp"
#include "pullup/mesh.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <vector>

namespace pullup {

/// A mesh face laid flat. Corner i corresponds to vertex i of the mesh face cycle.
struct PlacedFace {
  int face = -1;
  std::vector<Vec2> corners;
  std::vector<int> net_vertices;  ///< net vertex id per corner
  int parent = -1;                ///< parent face in the fold tree, -1 for the base face
  int parent_edge = -1;           ///< fold edge shared with the parent
};

struct NetVertex {
  Vec2 position;
  int mesh_vertex = -1;
  std::vector<int> faces;  ///< incident faces, ascending
};

/// Net edge on a cut (or open-mesh border) edge, oriented along its face's cycle.
struct NetEdge {
  int a = -1;
  int b = -1;
  int mesh_edge = -1;
  int face = -1;
  int side = -1;
};

/// Net edge on a fold edge, oriented along the parent face's cycle (child on the right).
struct Crease {
  int a = -1;
  int b = -1;
  int mesh_edge = -1;
  int parent_face = -1;
  int child_face = -1;
  EdgeGeometry geometry;
};

/// Plane coordinates of the base face: p -> ((p-o).x, (p-o).y); normal points outward.
struct SheetFrame {
  Vec3 origin = Vec3::Zero();
  Vec3 x_axis = Vec3::UnitX();
  Vec3 y_axis = Vec3::UnitY();
  Vec3 normal = Vec3::UnitZ();

  /// Mesh point expressed in sheet coordinates (z along the outward base normal).
  Vec3 to_sheet(const Vec3& p) const {
    const Vec3 d = p - origin;
    return {d.dot(x_axis), d.dot(y_axis), d.dot(normal)};
  }
};

struct Net {
  std::vector<PlacedFace> faces;  ///< indexed by mesh face id
  std::vector<NetVertex> vertices;
  std::vector<NetEdge> boundary;
  std::vector<Crease> creases;
  int base_face = 0;
  SheetFrame frame;
  std::vector<int> order;  ///< faces in fold-tree BFS order, base first

  int net_vertex(int face, int corner) const {
    const auto& nv = faces[face].net_vertices;
    const int n = static_cast<int>(nv.size());
    return nv[((corner % n) + n) % n];
  }
  Box2 bounds() const {
    Box2 b;
    for (const auto& v : vertices) b.extend(v.position);
    return b;
  }
};

/// Chain of fold-tree parents, computed by BFS over fold edges from `root`.
/// Throws invalid-argument when the fold edges are not a spanning tree of the faces.
inline std::vector<std::pair<int, int>> fold_tree_parents(const Mesh& mesh, const CutTree& tree,
                                                          std::vector<int>& order) {
  const int nf = mesh.face_count();
  if (static_cast<int>(tree.fold_edges.size()) != nf - 1) {
    throw Error(ErrorCode::invalid_argument, "fold edges do not form a spanning tree of the faces");
  }
  std::vector<std::vector<std::pair<int, int>>> adj(nf);
  for (int e : tree.fold_edges) {
    const Edge& edge = mesh.edges()[e];
    if (edge.face_count() != 2) throw Error(ErrorCode::invalid_argument, "fold edge without two faces");
    adj[edge.sides[0].face].push_back({edge.sides[1].face, e});
    adj[edge.sides[1].face].push_back({edge.sides[0].face, e});
  }
  std::vector<std::pair<int, int>> parent(nf, {-2, -1});
  parent[tree.root_face] = {-1, -1};
  order.clear();
  std::queue<int> q;
  q.push(tree.root_face);
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    order.push_back(f);
    for (auto [g, e] : adj[f]) {
      if (parent[g].first != -2) continue;
      parent[g] = {f, e};
      q.push(g);
    }
  }
  if (static_cast<int>(order.size()) != nf) {
    throw Error(ErrorCode::invalid_argument, "fold edges do not connect all faces");
  }
  return parent;
}

/// Lays every face flat by rotating it about its fold-tree parent edge into the
/// parent's plane, starting from the root face in its own plane coordinates.
inline Net place_faces(const Mesh& mesh, const CutTree& tree) {
  const int nf = mesh.face_count();
  Net net;
  net.base_face = tree.root_face;
  const auto parents = fold_tree_parents(mesh, tree, net.order);
  net.faces.resize(nf);

  {
    const int r = tree.root_face;
    SheetFrame& fr = net.frame;
    fr.origin = mesh.corner_point(r, 0);
    fr.normal = face_unit_normal(mesh, r);
    fr.x_axis = (mesh.corner_point(r, 1) - fr.origin).normalized();
    fr.y_axis = fr.normal.cross(fr.x_axis);
    PlacedFace& pf = net.faces[r];
    pf.face = r;
    for (const Vec3& p : mesh.face_points(r)) {
      const Vec3 s = fr.to_sheet(p);
      pf.corners.emplace_back(s.x(), s.y());
    }
  }

  for (std::size_t k = 1; k < net.order.size(); ++k) {
    const int f = net.order[k];
    const auto [p, e] = parents[f];
    const Edge& edge = mesh.edges()[e];
    const Face& pface = mesh.faces()[p];
    const Face& cface = mesh.faces()[f];
    auto find_corner = [](const Face& face, int v) {
      return static_cast<int>(std::find(face.begin(), face.end(), v) - face.begin());
    };
    const int va = edge.v0;
    const int vb = edge.v1;
    const Vec2 A = net.faces[p].corners[find_corner(pface, va)];
    const Vec2 B = net.faces[p].corners[find_corner(pface, vb)];
    const Vec3 a3 = mesh.vertices()[va];
    const Vec3 u = (mesh.vertices()[vb] - a3).normalized();
    const Vec3 w = face_unit_normal(mesh, f).cross(u);
    const Vec2 U = (B - A).normalized();
    const Vec2 W = perp_left(U);
    PlacedFace& pf = net.faces[f];
    pf.face = f;
    pf.parent = p;
    pf.parent_edge = e;
    for (int v : cface) {
      if (v == va) {
        pf.corners.push_back(A);
      } else if (v == vb) {
        pf.corners.push_back(B);
      } else {
        const Vec3 d = mesh.vertices()[v] - a3;
        pf.corners.push_back(A + d.dot(u) * U + d.dot(w) * W);
      }
    }
  }

  // isometry check
  for (int f = 0; f < nf; ++f) {
    const Face& face = mesh.faces()[f];
    const auto& c = net.faces[f].corners;
    double longest = 0.0;
    for (std::size_t i = 0; i < face.size(); ++i) longest = std::max(longest, mesh.edge_length(mesh.side_edge(f, static_cast<int>(i))));
    for (std::size_t i = 0; i < face.size(); ++i) {
      for (std::size_t j = i + 1; j < face.size(); ++j) {
        const double d3 = (mesh.vertices()[face[i]] - mesh.vertices()[face[j]]).norm();
        const double d2 = (c[i] - c[j]).norm();
        if (!(std::abs(d3 - d2) <= 1e-9 * longest)) {
          throw Error(ErrorCode::numeric_instability, "placement of face " + std::to_string(f) + " is not isometric");
        }
      }
    }
  }

  // net vertices: corners of one mesh vertex glued through fold edges incident to it
  std::vector<bool> is_fold(mesh.edge_count(), false);
  for (int e : tree.fold_edges) is_fold[e] = true;
  for (int f = 0; f < nf; ++f) net.faces[f].net_vertices.assign(mesh.faces()[f].size(), -1);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const auto& corners = mesh.vertex_corners(v);
    DisjointSets wedge(corners.size());
    std::map<int, int> slot_of_face;
    for (std::size_t i = 0; i < corners.size(); ++i) slot_of_face[corners[i].face] = static_cast<int>(i);
    for (std::size_t i = 0; i < corners.size(); ++i) {
      const Corner& c = corners[i];
      const int sz = static_cast<int>(mesh.faces()[c.face].size());
      for (int side : {c.index, (c.index + sz - 1) % sz}) {
        const int e = mesh.side_edge(c.face, side);
        if (!is_fold[e]) continue;
        const int g = mesh.edges()[e].other_face(c.face);
        if (auto it = slot_of_face.find(g); it != slot_of_face.end()) wedge.unite(static_cast<int>(i), it->second);
      }
    }
    // net vertex ids in order of (mesh vertex, smallest face of the wedge)
    std::map<int, std::vector<int>> groups;
    for (std::size_t i = 0; i < corners.size(); ++i) groups[wedge.find(static_cast<int>(i))].push_back(static_cast<int>(i));
    std::vector<std::vector<int>> ordered;
    for (auto& [root, members] : groups) ordered.push_back(members);
    auto min_face = [&](const std::vector<int>& g) {
      int m = nf;
      for (int i : g) m = std::min(m, corners[i].face);
      return m;
    };
    std::sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) { return min_face(x) < min_face(y); });
    for (const auto& members : ordered) {
      NetVertex nvx;
      nvx.mesh_vertex = v;
      const int id = static_cast<int>(net.vertices.size());
      Vec2 acc = Vec2::Zero();
      for (int i : members) {
        const Corner& c = corners[i];
        net.faces[c.face].net_vertices[c.index] = id;
        nvx.faces.push_back(c.face);
        acc += net.faces[c.face].corners[c.index];
      }
      std::sort(nvx.faces.begin(), nvx.faces.end());
      nvx.position = acc / static_cast<double>(members.size());
      net.vertices.push_back(std::move(nvx));
    }
  }

  for (int f = 0; f < nf; ++f) {
    const int sz = static_cast<int>(mesh.faces()[f].size());
    for (int i = 0; i < sz; ++i) {
      const int e = mesh.side_edge(f, i);
      if (is_fold[e]) continue;
      net.boundary.push_back({net.net_vertex(f, i), net.net_vertex(f, i + 1), e, f, i});
    }
  }
  for (std::size_t k = 1; k < net.order.size(); ++k) {
    const int f = net.order[k];
    const auto [p, e] = parents[f];
    const Edge& edge = mesh.edges()[e];
    const Corner& side = edge.sides[0].face == p ? edge.sides[0] : edge.sides[1];
    Crease cr;
    cr.a = net.net_vertex(p, side.index);
    cr.b = net.net_vertex(p, side.index + 1);
    cr.mesh_edge = e;
    cr.parent_face = p;
    cr.child_face = f;
    cr.geometry = edge_geometry_of(mesh, e);
    net.creases.push_back(cr);
  }
  std::sort(net.creases.begin(), net.creases.end(), [](const Crease& x, const Crease& y) { return x.mesh_edge < y.mesh_edge; });
  return net;
}

/// Net with every coordinate multiplied by `s` (e.g. model units to millimetres).
inline Net scaled(Net net, double s) {
  for (auto& f : net.faces) {
    for (auto& c : f.corners) c *= s;
  }
  for (auto& v : net.vertices) v.position *= s;
  for (auto& c : net.creases) c.geometry.length *= s;
  net.frame.origin *= s;
  return net;
}

}  // namespace pullup
