#pragma once

#include "pullup/mesh.hpp"

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace pullup {

struct Violation {
  std::string kind;  ///< e.g. "not-closed", "non-manifold-vertex"
  int element = -1;  ///< face, edge or vertex id depending on kind; -1 for whole-mesh findings
  std::string message;
};

struct ValidationReport {
  bool accepted = true;
  bool orientation_repaired = false;
  int euler_characteristic = 0;
  int genus = 0;
  std::vector<Violation> violations;

  bool has(std::string_view kind) const {
    for (const auto& v : violations) {
      if (v.kind == kind) return true;
    }
    return false;
  }
};

inline nlohmann::json to_json(const ValidationReport& r) {
  nlohmann::json j;
  j["accepted"] = r.accepted;
  j["orientation_repaired"] = r.orientation_repaired;
  j["euler_characteristic"] = r.euler_characteristic;
  j["genus"] = r.genus;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : r.violations) {
    j["violations"].push_back({{"kind", v.kind}, {"element", v.element}, {"message", v.message}});
  }
  return j;
}

/// Largest distance of a face vertex from the face's least-squares plane.
inline double face_planarity_error(const Mesh& mesh, int face) {
  const auto pts = mesh.face_points(face);
  Vec3 c = Vec3::Zero();
  for (const Vec3& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Mat3 cov = Mat3::Zero();
  for (const Vec3& p : pts) cov += (p - c) * (p - c).transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  const Vec3 n = eig.eigenvectors().col(0);
  double worst = 0.0;
  for (const Vec3& p : pts) worst = std::max(worst, std::abs(n.dot(p - c)));
  return worst;
}

namespace detail {

inline bool side_forward(const Mesh& mesh, const Corner& c, int from) { return mesh.faces()[c.face][c.index] == from; }

/// Oriented face components; -1 entries when the mesh has non-manifold edges.
inline int count_boundary_loops(const Mesh& mesh) {
  DisjointSets loops(mesh.vertex_count());
  std::set<int> verts;
  for (const Edge& e : mesh.edges()) {
    if (e.face_count() != 1) continue;
    loops.unite(e.v0, e.v1);
    verts.insert(e.v0);
    verts.insert(e.v1);
  }
  std::set<int> roots;
  for (int v : verts) roots.insert(loops.find(v));
  return static_cast<int>(roots.size());
}

}  // namespace detail

/// Checks closed-manifold requirements. Open meshes (split pieces) are exempt from the
/// 2-faces-per-edge rule and their vertex stars may be open fans.
inline ValidationReport validate_manifold(const Mesh& mesh) {
  ValidationReport report;
  auto add = [&](std::string kind, int element, std::string message) {
    report.violations.push_back({std::move(kind), element, std::move(message)});
  };

  for (int f = 0; f < mesh.face_count(); ++f) {
    const Face& face = mesh.faces()[f];
    std::set<int> distinct(face.begin(), face.end());
    if (face.size() < 3 || distinct.size() != face.size()) {
      add("degenerate-face", f, "face " + std::to_string(f) + " repeats a vertex or has fewer than 3 vertices");
    }
  }

  bool manifold_edges = true;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Edge& edge = mesh.edges()[e];
    const std::string name = "edge " + std::to_string(edge.v0) + "-" + std::to_string(edge.v1);
    if (edge.face_count() > 2) {
      manifold_edges = false;
      add("non-manifold-edge", e, name + " has " + std::to_string(edge.face_count()) + " faces");
    } else if (edge.face_count() == 1 && !mesh.open()) {
      add("not-closed", e, name + " has a single face");
    } else if (edge.face_count() == 2) {
      const bool a = detail::side_forward(mesh, edge.sides[0], edge.v0);
      const bool b = detail::side_forward(mesh, edge.sides[1], edge.v0);
      if (a == b) add("inconsistent-orientation", e, name + " is traversed twice in the same direction");
    }
  }

  std::vector<bool> used(mesh.vertex_count(), false);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const auto& corners = mesh.vertex_corners(v);
    if (corners.empty()) {
      add("isolated-vertex", v, "vertex " + std::to_string(v) + " belongs to no face");
      continue;
    }
    used[v] = true;
    if (!manifold_edges) continue;
    // faces around v must form one fan, linked through edges incident to v
    DisjointSets fan(corners.size());
    for (std::size_t i = 0; i < corners.size(); ++i) {
      for (std::size_t j = i + 1; j < corners.size(); ++j) {
        const int fi = corners[i].face;
        const int fj = corners[j].face;
        for (int k : {corners[i].index, corners[i].index - 1}) {
          const int sz = static_cast<int>(mesh.faces()[fi].size());
          const int e = mesh.side_edge(fi, (k + sz) % sz);
          if (mesh.edges()[e].other_face(fi) == fj) fan.unite(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    for (std::size_t i = 1; i < corners.size(); ++i) {
      if (fan.find(static_cast<int>(i)) != fan.find(0)) {
        add("non-manifold-vertex", v, "faces around vertex " + std::to_string(v) + " form several fans");
        break;
      }
    }
  }

  const double tol = 1e-6 * mesh.bbox_diagonal();
  for (int f = 0; f < mesh.face_count(); ++f) {
    if (mesh.faces()[f].size() > 3 && face_planarity_error(mesh, f) > tol) {
      add("non-planar-face", f, "face " + std::to_string(f) + " deviates from its plane");
    }
  }

  DisjointSets comps(mesh.face_count());
  for (const Edge& e : mesh.edges()) {
    for (std::size_t k = 1; k < e.sides.size(); ++k) comps.unite(e.sides[0].face, e.sides[k].face);
  }
  bool connected = true;
  for (int f = 1; f < mesh.face_count(); ++f) connected = connected && comps.find(f) == comps.find(0);
  if (!connected) add("disconnected", -1, "faces form more than one edge-connected component");
  if (mesh.face_count() == 0) add("empty", -1, "mesh has no faces");

  report.euler_characteristic = mesh.euler_characteristic();
  if (connected && manifold_edges && mesh.face_count() > 0) {
    const int boundary = detail::count_boundary_loops(mesh);
    report.genus = (2 - report.euler_characteristic - boundary) / 2;
    if (report.genus > 0) {
      add("genus", -1, "surface has genus " + std::to_string(report.genus) + "; only genus 0 can be unfolded");
    }
  }
  report.accepted = report.violations.empty();
  return report;
}

/// Signed volume enclosed by a closed mesh (positive for outward orientation).
inline double signed_volume(const Mesh& mesh) {
  double six_v = 0.0;
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto pts = mesh.face_points(f);
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) six_v += pts[0].dot(pts[i].cross(pts[i + 1]));
  }
  return six_v / 6.0;
}

/// Re-orients faces consistently by BFS over manifold edges, then flips closed
/// components that enclose negative volume. Returns nullopt if non-orientable.
inline std::optional<Mesh> repair_orientation(const Mesh& mesh) {
  const int nf = mesh.face_count();
  std::vector<int> flip(nf, -1);
  std::vector<int> component(nf, -1);
  int ncomp = 0;
  for (int seed = 0; seed < nf; ++seed) {
    if (flip[seed] != -1) continue;
    flip[seed] = 0;
    component[seed] = ncomp;
    std::queue<int> q;
    q.push(seed);
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      const int sz = static_cast<int>(mesh.faces()[f].size());
      for (int i = 0; i < sz; ++i) {
        const Edge& e = mesh.edges()[mesh.side_edge(f, i)];
        if (e.face_count() != 2) continue;
        const Corner& mine = e.sides[0].face == f && e.sides[0].index == i ? e.sides[0] : e.sides[1];
        const Corner& other = &mine == &e.sides[0] ? e.sides[1] : e.sides[0];
        if (other.face == f) return std::nullopt;
        const bool same_dir = detail::side_forward(mesh, mine, e.v0) == detail::side_forward(mesh, other, e.v0);
        const int want = flip[f] ^ (same_dir ? 1 : 0);
        if (flip[other.face] == -1) {
          flip[other.face] = want;
          component[other.face] = ncomp;
          q.push(other.face);
        } else if (flip[other.face] != want) {
          return std::nullopt;
        }
      }
    }
    ++ncomp;
  }
  std::vector<Face> faces = mesh.faces();
  for (int f = 0; f < nf; ++f) {
    if (flip[f]) std::reverse(faces[f].begin(), faces[f].end());
  }
  Mesh oriented = mesh.with_faces(faces);
  if (!mesh.open()) {
    std::vector<double> volume(ncomp, 0.0);
    for (int f = 0; f < nf; ++f) {
      const auto pts = oriented.face_points(f);
      for (std::size_t i = 1; i + 1 < pts.size(); ++i) volume[component[f]] += pts[0].dot(pts[i].cross(pts[i + 1]));
    }
    bool any = false;
    for (int f = 0; f < nf; ++f) {
      if (volume[component[f]] < 0) {
        std::reverse(faces[f].begin(), faces[f].end());
        any = true;
      }
    }
    if (any) oriented = mesh.with_faces(std::move(faces));
  }
  return oriented;
}

struct PreparedMesh {
  Mesh mesh;
  ValidationReport report;
};

/// Orientation repair followed by validation; the report refers to the repaired mesh.
inline PreparedMesh prepare_mesh(const Mesh& input) {
  const ValidationReport raw = validate_manifold(input);
  if (!raw.has("inconsistent-orientation") && raw.accepted && (input.open() || signed_volume(input) > 0)) {
    return {input, raw};
  }
  auto repaired = repair_orientation(input);
  if (!repaired) {
    ValidationReport r = raw;
    r.violations.push_back({"non-orientable", -1, "face orientations cannot be made consistent"});
    r.accepted = false;
    return {input, r};
  }
  ValidationReport r = validate_manifold(*repaired);
  const bool changed = repaired->faces() != input.faces();
  r.orientation_repaired = changed;
  return {std::move(*repaired), r};
}

}  // namespace pullup
