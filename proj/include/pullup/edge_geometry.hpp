#pragma once

#include "pullup/error.hpp"
#include "pullup/mesh.hpp"

#include <cmath>
#include <vector>

namespace pullup {

struct EdgeGeometry {
  int edge = -1;
  double dihedral = kPi;   ///< interior angle between the two faces, in (0, 2pi)
  double fold_angle = 0;   ///< pi - dihedral; positive for convex edges
  double length = 0;
};

/// Unit outward normal of a face; throws degenerate-geometry for zero-area faces.
inline Vec3 face_unit_normal(const Mesh& mesh, int face) {
  const Vec3 n = mesh.face_area_vector(face);
  double scale = 0.0;
  const int sz = static_cast<int>(mesh.faces()[face].size());
  for (int i = 0; i < sz; ++i) scale = std::max(scale, (mesh.corner_point(face, i + 1) - mesh.corner_point(face, i)).squaredNorm());
  if (!(n.norm() > 1e-12 * scale) || !std::isfinite(n.norm())) {
    throw Error(ErrorCode::degenerate_geometry, "face " + std::to_string(face) + " has zero area");
  }
  return n.normalized();
}

/// Fold angle of one edge. Edges with a single face get a zero fold angle.
inline EdgeGeometry edge_geometry_of(const Mesh& mesh, int e) {
  const Edge& edge = mesh.edges()[e];
  EdgeGeometry g;
  g.edge = e;
  g.length = mesh.edge_length(e);
  if (edge.face_count() != 2) return g;
  const Corner& s0 = edge.sides[0];
  const Vec3 n0 = face_unit_normal(mesh, s0.face);
  const Vec3 n1 = face_unit_normal(mesh, edge.sides[1].face);
  // direction of the edge as traversed by the first face
  const Vec3 d = (mesh.corner_point(s0.face, s0.index + 1) - mesh.corner_point(s0.face, s0.index)).normalized();
  g.fold_angle = std::atan2(n0.cross(n1).dot(d), n0.dot(n1));
  g.dihedral = kPi - g.fold_angle;
  return g;
}

/// Per-edge dihedral, fold angle and length; requires consistent outward orientation.
inline std::vector<EdgeGeometry> edge_geometry(const Mesh& mesh) {
  for (int f = 0; f < mesh.face_count(); ++f) face_unit_normal(mesh, f);
  std::vector<EdgeGeometry> out;
  out.reserve(mesh.edges().size());
  for (int e = 0; e < mesh.edge_count(); ++e) out.push_back(edge_geometry_of(mesh, e));
  return out;
}

}  // namespace pullup
