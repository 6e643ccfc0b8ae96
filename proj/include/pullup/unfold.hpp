#pragma once

#include "pullup/cut_tree.hpp"
#include "pullup/net.hpp"
#include "pullup/overlap.hpp"
#include "pullup/validate.hpp"

#include <Eigen/Eigenvalues>

#include <cstdint>
#include <optional>
#include <vector>

namespace pullup {

struct UnfoldConfig {
  std::vector<Heuristic> heuristics{kAllHeuristics.begin(), kAllHeuristics.end()};
  int attempts_per_heuristic = 8;
  int max_splits = 3;
  std::uint64_t seed = 0;
};

/// One connected sheet: the (sub-)mesh it came from and its net.
struct Piece {
  Mesh mesh;
  std::vector<int> face_map;    ///< piece face -> input face
  std::vector<int> vertex_map;  ///< piece vertex -> input vertex
  CutTree tree;
  Net net;
  std::vector<std::pair<int, int>> overlaps;  ///< empty for a valid net
  std::uint64_t attempt_seed = 0;             ///< seed handed to build_cut_tree
};

struct UnfoldResult {
  std::vector<Piece> pieces;
  int split_count = 0;

  bool overlap_free() const {
    for (const auto& p : pieces) {
      if (!p.overlaps.empty()) return false;
    }
    return !pieces.empty();
  }
};

/// Raised when the split budget runs out; carries the best partial result.
class UnfoldError : public Error {
 public:
  UnfoldError(const std::string& message, UnfoldResult best)
      : Error(ErrorCode::unfoldable_with_budget, message), best_(std::move(best)) {}
  const UnfoldResult& best() const { return best_; }

 private:
  UnfoldResult best_;
};

struct SubMesh {
  Mesh mesh;
  std::vector<int> face_map;
  std::vector<int> vertex_map;
};

/// Faces `keep` of `mesh` as an open mesh with compacted, order-preserving indices.
inline SubMesh extract_submesh(const Mesh& mesh, const std::vector<int>& keep) {
  std::vector<int> remap(mesh.vertex_count(), -1);
  SubMesh out;
  for (int f : keep) {
    for (int v : mesh.faces()[f]) remap[v] = 0;
  }
  std::vector<Vec3> verts;
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (remap[v] < 0) continue;
    remap[v] = static_cast<int>(verts.size());
    verts.push_back(mesh.vertices()[v]);
    out.vertex_map.push_back(v);
  }
  std::vector<Face> faces;
  for (int f : keep) {
    Face face;
    for (int v : mesh.faces()[f]) face.push_back(remap[v]);
    faces.push_back(std::move(face));
    out.face_map.push_back(f);
  }
  out.mesh = Mesh(std::move(verts), std::move(faces), mesh.label(), true);
  return out;
}

namespace detail {

struct AttemptOutcome {
  std::optional<Piece> best;
  bool success = false;
};

/// Heuristics in configured order, seeds in attempt order; first overlap-free net wins.
inline AttemptOutcome search_nets(const Mesh& mesh, const UnfoldConfig& config, std::uint64_t salt) {
  AttemptOutcome out;
  for (std::size_t h = 0; h < config.heuristics.size(); ++h) {
    const Heuristic heuristic = config.heuristics[h];
    // BFS does not depend on the seed; one attempt covers it
    const int attempts = heuristic == Heuristic::bfs_largest_face ? 1 : config.attempts_per_heuristic;
    for (int a = 0; a < attempts; ++a) {
      const std::uint64_t seed = mix_seed(config.seed, salt * 4096 + h * 64 + static_cast<std::uint64_t>(a));
      Piece piece;
      try {
        piece.tree = build_cut_tree(mesh, heuristic, seed);
        piece.net = place_faces(mesh, piece.tree);
      } catch (const Error&) {
        continue;
      }
      piece.attempt_seed = seed;
      piece.overlaps = detect_overlaps(piece.net);
      const bool better = !out.best || piece.overlaps.size() < out.best->overlaps.size();
      if (better) out.best = std::move(piece);
      if (out.best->overlaps.empty()) {
        out.success = true;
        return out;
      }
    }
  }
  return out;
}

/// A split half must be one edge-connected disc with manifold vertex fans.
inline bool acceptable_half(const Mesh& half) {
  const ValidationReport r = validate_manifold(half);
  return r.accepted && half.euler_characteristic() == 1 && pullup::detail::count_boundary_loops(half) == 1;
}

}  // namespace detail

inline constexpr int kRandomSplitNormals = 64;

inline constexpr int kSplitCandidates = 4;

/// Splits by a plane through the surface centroid: faces are classified by the side of
/// their centroid. Candidate normals are the principal axes of the vertex covariance
/// (largest spread first) followed by seeded random directions. Returns up to
/// `limit` distinct splits whose halves are both single discs, in candidate order.
inline std::vector<std::pair<SubMesh, SubMesh>> split_candidates(const Mesh& mesh, std::uint64_t seed,
                                                                 std::uint64_t salt, int limit = kSplitCandidates) {
  const Vec3 com = mesh.surface_centroid();
  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : mesh.vertices()) mean += p;
  mean /= static_cast<double>(std::max(1, mesh.vertex_count()));
  Mat3 cov = Mat3::Zero();
  for (const Vec3& p : mesh.vertices()) cov += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  std::vector<Vec3> normals{eig.eigenvectors().col(2), eig.eigenvectors().col(1), eig.eigenvectors().col(0)};
  SplitMix64 rng(mix_seed(seed, 0x5b1d + salt));
  for (int k = 0; k < kRandomSplitNormals; ++k) normals.push_back(rng.unit_vector());

  std::vector<std::pair<SubMesh, SubMesh>> out;
  std::vector<std::vector<int>> seen;
  for (const Vec3& n : normals) {
    if (static_cast<int>(out.size()) >= limit) break;
    std::vector<int> a, b;
    for (int f = 0; f < mesh.face_count(); ++f) (n.dot(mesh.face_centroid(f) - com) >= 0 ? a : b).push_back(f);
    if (a.empty() || b.empty()) continue;
    if (b.front() == 0) std::swap(a, b);
    if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
    SubMesh ha = extract_submesh(mesh, a);
    SubMesh hb = extract_submesh(mesh, b);
    if (!detail::acceptable_half(ha.mesh) || !detail::acceptable_half(hb.mesh)) continue;
    seen.push_back(a);
    out.emplace_back(std::move(ha), std::move(hb));
  }
  return out;
}

/// First acceptable split, if any.
inline std::optional<std::pair<SubMesh, SubMesh>> split_mesh(const Mesh& mesh, std::uint64_t seed, std::uint64_t salt) {
  auto c = split_candidates(mesh, seed, salt, 1);
  if (c.empty()) return std::nullopt;
  return std::move(c.front());
}

namespace detail {

inline std::size_t total_overlaps(const UnfoldResult& r, std::size_t from) {
  std::size_t n = 0;
  for (std::size_t i = from; i < r.pieces.size(); ++i) n += r.pieces[i].overlaps.size();
  return n;
}

/// Unfolds `part`, splitting when needed. Split planes are tried in candidate order;
/// if some piece below a split stays overlapping, the next plane is tried and the
/// attempt with the fewest remaining overlaps is kept.
inline bool unfold_recursive(const SubMesh& part, int budget, const UnfoldConfig& config, std::uint64_t salt,
                             UnfoldResult& result) {
  AttemptOutcome attempt = search_nets(part.mesh, config, salt);
  auto keep_best = [&] {
    if (!attempt.best) {
      Piece p;
      p.mesh = part.mesh;
      p.overlaps = {{-1, -1}};
      attempt.best = std::move(p);
    }
    attempt.best->mesh = part.mesh;
    attempt.best->face_map = part.face_map;
    attempt.best->vertex_map = part.vertex_map;
    result.pieces.push_back(std::move(*attempt.best));
  };
  if (attempt.success || budget <= 0) {
    keep_best();
    return attempt.success;
  }
  auto candidates = split_candidates(part.mesh, config.seed, salt);
  if (candidates.empty()) {
    keep_best();
    return false;
  }
  std::optional<UnfoldResult> best;
  for (auto& halves : candidates) {
    for (SubMesh* h : {&halves.first, &halves.second}) {
      for (int& f : h->face_map) f = part.face_map[f];
      for (int& v : h->vertex_map) v = part.vertex_map[v];
    }
    UnfoldResult trial;
    trial.split_count = 1;
    const bool left = unfold_recursive(halves.first, budget - 1, config, salt * 2 + 1, trial);
    const bool right = unfold_recursive(halves.second, budget - 1, config, salt * 2 + 2, trial);
    if (!best || total_overlaps(trial, 0) < total_overlaps(*best, 0)) best = std::move(trial);
    if (left && right) break;
  }
  const bool clean = total_overlaps(*best, 0) == 0;
  result.split_count += best->split_count;
  for (Piece& p : best->pieces) result.pieces.push_back(std::move(p));
  return clean;
}

}  // namespace detail

/// Tries every heuristic/seed on the whole mesh, then recursively splits pieces in
/// half (at most `max_splits` levels deep) until every piece has an overlap-free net.
/// Throws UnfoldError carrying the best partial result when the budget runs out.
inline UnfoldResult unfold_with_fallback(const Mesh& mesh, const UnfoldConfig& config = {}) {
  SubMesh whole{mesh, {}, {}};
  for (int f = 0; f < mesh.face_count(); ++f) whole.face_map.push_back(f);
  for (int v = 0; v < mesh.vertex_count(); ++v) whole.vertex_map.push_back(v);
  UnfoldResult result;
  if (!detail::unfold_recursive(whole, config.max_splits, config, 0, result)) {
    throw UnfoldError("no overlap-free unfolding within " + std::to_string(config.max_splits) + " split levels",
                      std::move(result));
  }
  return result;
}

}  // namespace pullup
