#pragma once

#include "pullup/error.hpp"
#include "pullup/geometry.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pullup {

using Face = std::vector<int>;

/// A face corner: `face`'s vertex at position `index` of its cycle.
struct Corner {
  int face = -1;
  int index = -1;
};

/// Undirected mesh edge with the face sides that use it. Side `i` of a face runs
/// from vertex `i` to vertex `i+1` of the cycle.
struct Edge {
  int v0 = -1;  ///< smaller vertex index
  int v1 = -1;
  std::vector<Corner> sides;

  std::size_t face_count() const { return sides.size(); }
  /// The other face across this edge, or -1.
  int other_face(int face) const {
    if (sides.size() != 2) return -1;
    return sides[0].face == face ? sides[1].face : sides[0].face;
  }
};

/// Polygonal surface. Immutable after construction; edges and vertex stars are derived.
class Mesh {
 public:
  Mesh() = default;

  /// Throws Error(index_out_of_range) for face indices outside the vertex list.
  Mesh(std::vector<Vec3> vertices, std::vector<Face> faces, std::string label = {}, bool open = false)
      : vertices_(std::move(vertices)), faces_(std::move(faces)), label_(std::move(label)), open_(open) {
    derive();
  }

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& label() const { return label_; }
  /// True for pieces produced by splitting; such meshes may have 1-face edges.
  bool open() const { return open_; }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }

  /// Edge id joining two vertices, or -1.
  int edge_between(int a, int b) const {
    auto it = edge_index_.find(key(a, b));
    return it == edge_index_.end() ? -1 : it->second;
  }
  /// Edge id of a face side (vertex i to vertex i+1).
  int side_edge(int face, int i) const { return face_sides_[face][i]; }
  /// Corners around a vertex, in face order (not angular order).
  const std::vector<Corner>& vertex_corners(int v) const { return vertex_corners_[v]; }

  Vec3 corner_point(int face, int i) const {
    const Face& f = faces_[face];
    return vertices_[f[(i % f.size() + f.size()) % f.size()]];
  }
  std::vector<Vec3> face_points(int face) const {
    std::vector<Vec3> pts;
    pts.reserve(faces_[face].size());
    for (int v : faces_[face]) pts.push_back(vertices_[v]);
    return pts;
  }
  /// Newell normal scaled to twice the face area.
  Vec3 face_area_vector(int face) const { return newell_normal(face_points(face)); }
  double face_area(int face) const { return 0.5 * face_area_vector(face).norm(); }
  Vec3 face_centroid(int face) const {
    Vec3 c = Vec3::Zero();
    for (int v : faces_[face]) c += vertices_[v];
    return c / static_cast<double>(faces_[face].size());
  }
  double edge_length(int e) const { return (vertices_[edges_[e].v1] - vertices_[edges_[e].v0]).norm(); }
  double bbox_diagonal() const { return pullup::bbox_diagonal(vertices_); }

  /// Area-weighted surface centroid.
  Vec3 surface_centroid() const {
    Vec3 acc = Vec3::Zero();
    double total = 0.0;
    for (int f = 0; f < face_count(); ++f) {
      const double a = face_area(f);
      acc += a * face_centroid(f);
      total += a;
    }
    return total > 0.0 ? Vec3(acc / total) : Vec3::Zero();
  }

  /// Copy with replaced face cycles (same vertices, label and open flag).
  Mesh with_faces(std::vector<Face> faces) const { return Mesh(vertices_, std::move(faces), label_, open_); }
  Mesh with_label(std::string label) const { return Mesh(vertices_, faces_, std::move(label), open_); }

 private:
  static std::uint64_t key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }

  void derive() {
    const int nv = vertex_count();
    vertex_corners_.assign(nv, {});
    face_sides_.assign(faces_.size(), {});
    for (int f = 0; f < face_count(); ++f) {
      const Face& face = faces_[f];
      for (int v : face) {
        if (v < 0 || v >= nv) {
          throw Error(ErrorCode::index_out_of_range,
                      "face " + std::to_string(f) + " references vertex " + std::to_string(v) + " of " +
                          std::to_string(nv));
        }
      }
      face_sides_[f].resize(face.size());
      for (std::size_t i = 0; i < face.size(); ++i) {
        const int a = face[i];
        const int b = face[(i + 1) % face.size()];
        vertex_corners_[a].push_back({f, static_cast<int>(i)});
        auto [it, inserted] = edge_index_.try_emplace(key(a, b), edge_count());
        if (inserted) edges_.push_back({std::min(a, b), std::max(a, b), {}});
        edges_[it->second].sides.push_back({f, static_cast<int>(i)});
        face_sides_[f][i] = it->second;
      }
    }
  }

  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::string label_;
  bool open_ = false;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, int> edge_index_;
  std::vector<std::vector<int>> face_sides_;
  std::vector<std::vector<Corner>> vertex_corners_;
};

}  // namespace pullup
