#pragma once

#include "pullup/error.hpp"
#include "pullup/mesh.hpp"
#include "pullup/net.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace pullup {

/// Net folded part-way: each face carried by a rigid motion of the sheet plane.
struct FoldState {
  double t = 0;
  int base_face = 0;
  std::vector<Rigid3> transforms;            ///< per face, sheet -> folded
  std::vector<std::vector<Vec3>> positions;  ///< per face, folded corners
};

namespace detail {

inline Vec3 lift(const Vec2& p) { return {p.x(), p.y(), 0.0}; }

}  // namespace detail

/// Rotates every crease by t times its fold angle, walking the fold tree from the
/// base face, which stays fixed in the sheet plane (normal +z, pointing outward).
inline FoldState fold_state_at(const Net& net, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::range, "fold parameter t must lie in [0, 1]");
  const int nf = static_cast<int>(net.faces.size());
  FoldState st;
  st.t = t;
  st.base_face = net.base_face;
  st.transforms.assign(nf, Rigid3{});
  std::vector<const Crease*> crease_of(nf, nullptr);
  for (const Crease& c : net.creases) crease_of[c.child_face] = &c;

  for (std::size_t k = 1; k < net.order.size(); ++k) {
    const int f = net.order[k];
    const Crease& c = *crease_of[f];
    const PlacedFace& parent = net.faces[c.parent_face];
    const auto corner_of = [&](int v) {
      const auto it = std::find(parent.net_vertices.begin(), parent.net_vertices.end(), v);
      return parent.corners[it - parent.net_vertices.begin()];
    };
    const Vec3 a = detail::lift(corner_of(c.a));
    const Vec3 b = detail::lift(corner_of(c.b));
    st.transforms[f] =
        st.transforms[c.parent_face] * Rigid3::about_axis(a, (b - a).normalized(), t * c.geometry.fold_angle);
  }
  st.positions.resize(nf);
  for (int f = 0; f < nf; ++f) {
    for (const Vec2& p : net.faces[f].corners) st.positions[f].push_back(st.transforms[f](detail::lift(p)));
  }
  return st;
}

struct RefoldReport {
  bool passed = false;
  double rmse = 0;             ///< against the mesh placed so the base face matches
  double registered_rmse = 0;  ///< after free least-squares rigid registration
  double max_copy_spread = 0;  ///< largest distance of a vertex copy from its copies' mean
  double tolerance = 0;
};

inline nlohmann::json to_json(const RefoldReport& r) {
  return {{"passed", r.passed},
          {"rmse", r.rmse},
          {"registered_rmse", r.registered_rmse},
          {"max_copy_spread", r.max_copy_spread},
          {"tolerance", r.tolerance}};
}

/// Compares the folded net with the mesh. Copies of each mesh vertex are averaged; the
/// primary RMSE compares those means with the mesh expressed in the base-face frame.
inline RefoldReport verify_refold(const Mesh& mesh, const Net& net, const FoldState& state) {
  RefoldReport r;
  r.tolerance = 1e-6 * mesh.bbox_diagonal();
  const int nvtx = mesh.vertex_count();
  std::vector<Vec3> sum(nvtx, Vec3::Zero());
  std::vector<int> count(nvtx, 0);
  for (std::size_t f = 0; f < net.faces.size(); ++f) {
    const Face& face = mesh.faces()[f];
    for (std::size_t i = 0; i < face.size(); ++i) {
      sum[face[i]] += state.positions[f][i];
      ++count[face[i]];
    }
  }
  std::vector<Vec3> folded, target;
  std::vector<int> index(nvtx, -1);
  for (int v = 0; v < nvtx; ++v) {
    if (count[v] == 0) continue;
    index[v] = static_cast<int>(folded.size());
    folded.push_back(sum[v] / count[v]);
    target.push_back(net.frame.to_sheet(mesh.vertices()[v]));
  }
  for (std::size_t f = 0; f < net.faces.size(); ++f) {
    const Face& face = mesh.faces()[f];
    for (std::size_t i = 0; i < face.size(); ++i) {
      r.max_copy_spread = std::max(r.max_copy_spread, (state.positions[f][i] - folded[index[face[i]]]).norm());
    }
  }
  double se = 0.0;
  for (std::size_t k = 0; k < folded.size(); ++k) se += (folded[k] - target[k]).squaredNorm();
  r.rmse = folded.empty() ? 0.0 : std::sqrt(se / folded.size());
  if (folded.size() >= 3) {
    const Rigid3 reg = kabsch(folded, target);
    double sr = 0.0;
    for (std::size_t k = 0; k < folded.size(); ++k) sr += (reg(folded[k]) - target[k]).squaredNorm();
    r.registered_rmse = std::sqrt(sr / folded.size());
  } else {
    r.registered_rmse = r.rmse;
  }
  r.passed = r.rmse <= r.tolerance && r.max_copy_spread <= r.tolerance;
  return r;
}

/// Writes `n_frames` polygon-soup OBJ files at uniform t plus a frames.json index.
/// Returns the written file names.
inline std::vector<std::string> export_frames(const Net& net, int n_frames, const std::filesystem::path& dir) {
  if (n_frames < 2) throw Error(ErrorCode::range, "at least two frames are needed");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  nlohmann::json index = nlohmann::json::array();
  std::vector<std::string> names;
  for (int i = 0; i < n_frames; ++i) {
    const double t = static_cast<double>(i) / (n_frames - 1);
    const FoldState st = fold_state_at(net, t);
    char name[32];
    std::snprintf(name, sizeof name, "frame_%03d.obj", i);
    std::ofstream out(dir / name);
    if (!out) throw Error(ErrorCode::io, "cannot write " + (dir / name).string());
    int next = 1;
    char buf[128];
    for (const auto& poly : st.positions) {
      for (const Vec3& p : poly) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
        out << buf;
      }
      out << 'f';
      for (std::size_t k = 0; k < poly.size(); ++k) out << ' ' << next + static_cast<int>(k);
      out << '\n';
      next += static_cast<int>(poly.size());
    }
    if (!out) throw Error(ErrorCode::io, "failed writing " + (dir / name).string());
    index.push_back({{"t", t}, {"filename", name}});
    names.emplace_back(name);
  }
  std::ofstream idx(dir / "frames.json");
  if (!idx) throw Error(ErrorCode::io, "cannot write " + (dir / "frames.json").string());
  idx << nlohmann::json{{"frames", index}}.dump(2) << '\n';
  return names;
}

}  // namespace pullup
