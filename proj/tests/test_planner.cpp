#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace pullup;
using namespace fixtures;

namespace {

struct Analysed {
  Mesh mesh;
  Net net;
  JoinAnalysis raw;
  JoinAnalysis pruned;
};

Analysed analyse(const Mesh& m, const CutTree& t) {
  Analysed a{m, place_faces(m, t), {}, {}};
  a.raw = compute_join_sets(a.mesh, a.net);
  a.pruned = prune_join_sets(a.net, a.raw);
  return a;
}

std::map<int, std::vector<int>> sets_by_mesh_vertex(const JoinAnalysis& j) {
  std::map<int, std::vector<int>> out;
  for (const JoinSet& s : j.sets) {
    auto& list = out[s.mesh_vertex];
    // a second set for one mesh vertex is a partition mismatch
    if (!list.empty()) list.push_back(-1);
    list.insert(list.end(), s.members.begin(), s.members.end());
  }
  return out;
}

bool consecutive_sets(const StringPath& p, const JoinAnalysis& j) {
  for (const JoinSet& s : j.sets) {
    if (s.pruned) continue;
    std::vector<std::size_t> at;
    for (int v : s.active()) {
      const auto it = std::find(p.hole_sequence.begin(), p.hole_sequence.end(), v);
      if (it == p.hole_sequence.end()) return false;
      at.push_back(static_cast<std::size_t>(it - p.hole_sequence.begin()));
    }
    std::sort(at.begin(), at.end());
    if (!at.empty() && at.back() - at.front() + 1 != at.size()) return false;
  }
  return true;
}

int active_holes(const JoinAnalysis& j) {
  int n = 0;
  for (const JoinSet& s : j.sets) {
    if (!s.pruned) n += static_cast<int>(s.active().size());
  }
  return n;
}

}  // namespace

TEST(JoinSets, TetrahedronStar) {
  const Mesh tet = prepare_mesh(regular_tetrahedron()).mesh;
  const Analysed a = analyse(tet, tetra_star_tree(tet));
  ASSERT_EQ(a.raw.sets.size(), 1u);
  const JoinSet& s = a.raw.sets[0];
  EXPECT_EQ(s.members.size(), 3u);
  EXPECT_EQ(s.rigidity_depth, 1);
  const auto oracle = copies_by_mesh_vertex(a.net);
  ASSERT_EQ(oracle.size(), 1u);
  EXPECT_EQ(oracle.begin()->first, s.mesh_vertex);
  EXPECT_EQ(oracle.begin()->second, s.members);
  for (int v : a.net.faces[0].net_vertices) EXPECT_EQ(a.raw.depth[v], 0);
  for (int v : s.members) EXPECT_EQ(a.raw.depth[v], 1);
}

TEST(JoinSets, TetrahedronStarApexRetained) {
  const Mesh tet = prepare_mesh(regular_tetrahedron()).mesh;
  const Analysed a = analyse(tet, tetra_star_tree(tet));
  ASSERT_EQ(a.pruned.sets.size(), 1u);
  EXPECT_FALSE(a.pruned.sets[0].pruned);
  EXPECT_TRUE(a.pruned.sets[0].removed.empty());
  // enumeration: each flap has two shared base vertices and one apex copy
  for (int f = 1; f < 4; ++f) {
    int shared = 0;
    for (int v : a.net.faces[f].net_vertices) shared += a.net.vertices[v].faces.size() >= 2 ? 1 : 0;
    EXPECT_EQ(shared, 2);
  }
}

TEST(JoinSets, CubeCrossPairsPruned) {
  const Mesh cube = unit_cube();
  const Analysed a = analyse(cube, cube_cross_tree(cube));
  EXPECT_EQ(sets_by_mesh_vertex(a.raw), copies_by_mesh_vertex(a.net));
  int pairs = 0, kept = 0;
  for (const JoinSet& s : a.pruned.sets) {
    EXPECT_EQ(s.rigidity_depth, 1);
    if (s.members.size() == 2) {
      ++pairs;
      EXPECT_TRUE(s.pruned);
      EXPECT_EQ(s.removed, s.members);
    } else {
      ++kept;
      EXPECT_FALSE(s.pruned);
    }
  }
  EXPECT_EQ(pairs, 2);
  EXPECT_EQ(kept, 2);
  EXPECT_EQ(active_holes(a.pruned), 6);
}

TEST(JoinSets, SetsShareOneMeshVertex) {
  for (const auto& p : corpus_range(0, 17)) {
    const Mesh m = load_prepared(p);
    const Analysed a = analyse(m, build_cut_tree(m, Heuristic::steepest_edge, 0));
    for (const JoinSet& s : a.raw.sets) {
      for (int v : s.members) EXPECT_EQ(a.net.vertices[v].mesh_vertex, s.mesh_vertex) << p;
    }
  }
}

TEST(JoinSets, OracleEquivalencePlatonicAndArchimedean) {
  std::vector<std::filesystem::path> files = platonic_files();
  for (const auto& p : archimedean_files()) files.push_back(p);
  for (const auto& p : files) {
    const Mesh m = load_prepared(p);
    for (Heuristic h : kAllHeuristics) {
      const Analysed a = analyse(m, build_cut_tree(m, h, 0));
      EXPECT_EQ(sets_by_mesh_vertex(a.raw), copies_by_mesh_vertex(a.net)) << p << " " << to_string(h);
    }
  }
}

TEST(JoinSets, SingleCopyVerticesHaveDepthZeroAndNoSet) {
  const Mesh m = load_prepared(netlib_dir() / "003_dodecahedron.netlib");
  const Analysed a = analyse(m, build_cut_tree(m, Heuristic::steepest_edge, 0));
  std::map<int, int> copies;
  for (const NetVertex& v : a.net.vertices) ++copies[v.mesh_vertex];
  for (std::size_t v = 0; v < a.net.vertices.size(); ++v) {
    if (copies[a.net.vertices[v].mesh_vertex] == 1) {
      EXPECT_EQ(a.raw.depth[v], 0);
      EXPECT_EQ(a.raw.set_of[v], -1);
    }
  }
}

TEST(JoinSets, DepthIsMonotoneUnderMerging) {
  for (const auto& p : corpus_files()) {
    const Mesh m = load_prepared(p);
    const Analysed a = analyse(m, build_cut_tree(m, Heuristic::steepest_edge, 0));
    for (const JoinSet& s : a.raw.sets) {
      int d = 1 << 30;
      for (int v : s.members) d = std::min(d, a.raw.depth[v]);
      EXPECT_EQ(s.rigidity_depth, d) << p;
      EXPECT_GE(s.rigidity_depth, 1) << p;
    }
  }
}

TEST(JoinSets, PruningKeepsThreeJoinedPerFace) {
  for (const auto& p : corpus_files()) {
    const Mesh m = load_prepared(p);
    const Analysed a = analyse(m, build_cut_tree(m, Heuristic::steepest_edge, 0));
    for (const PlacedFace& f : a.net.faces) {
      int joined = 0;
      for (int v : f.net_vertices) {
        if (a.pruned.is_joined(v) || a.net.vertices[v].faces.size() >= 2) ++joined;
      }
      EXPECT_GE(joined, 3) << p << " face " << f.face;
    }
    // a set is never left with a single active member
    for (const JoinSet& s : a.pruned.sets) {
      if (!s.pruned) EXPECT_GE(s.active().size(), 2u) << p;
    }
  }
}

TEST(JoinSets, PruningDeterministic) {
  const Mesh m = load_prepared(netlib_dir() / "014_truncated_icosahedron.netlib");
  const Analysed a = analyse(m, build_cut_tree(m, Heuristic::steepest_edge, 3));
  const JoinAnalysis again = prune_join_sets(a.net, a.raw);
  ASSERT_EQ(again.sets.size(), a.pruned.sets.size());
  for (std::size_t i = 0; i < again.sets.size(); ++i) EXPECT_EQ(again.sets[i].removed, a.pruned.sets[i].removed);
}

TEST(StringPathTest, SinglePairCostIsDistance) {
  PathInstance in;
  in.net.vertices.resize(2);
  in.net.vertices[0].position = {1, 2};
  in.net.vertices[1].position = {4, 6};
  JoinSet s;
  s.members = {0, 1};
  in.joins.sets = {s};
  in.joins.depth = {1, 1};
  in.joins.set_of = {0, 0};
  const StringPath p = plan_string_path(in.net, in.joins, 3.0);
  EXPECT_EQ(p.hole_sequence.size(), 2u);
  EXPECT_DOUBLE_EQ(p.cost, 5.0);
  EXPECT_DOUBLE_EQ(p.total_turning, 0.0);
}

TEST(StringPathTest, ZeroHolesEmptyPath) {
  const PathInstance in;
  const StringPath p = plan_string_path(in.net, in.joins, 1.0);
  EXPECT_TRUE(p.hole_sequence.empty());
  EXPECT_EQ(p.cost, 0.0);
}

TEST(StringPathTest, OneHoleIsDangling) {
  PathInstance in = random_path_instance(1);
  JoinSet& s = in.joins.sets[0];
  s.removed.assign(s.members.begin() + 1, s.members.end());
  for (std::size_t i = 1; i < in.joins.sets.size(); ++i) in.joins.sets[i].pruned = true;
  try {
    plan_string_path(in.net, in.joins, 1.0);
    FAIL() << "expected dangling-hole";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dangling_hole);
  }
}

TEST(StringPathTest, MatchesBruteForceOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const PathInstance in = random_path_instance(seed);
    const double lambda = 10.0 * static_cast<double>(seed % 4);
    const StringPath p = plan_string_path(in.net, in.joins, lambda);
    const double oracle = brute_force_path_cost(in, lambda);
    EXPECT_NEAR(p.cost, oracle, 1e-12 * std::max(1.0, oracle)) << "seed " << seed;
    EXPECT_NEAR(naive_path_cost(in.net, p.hole_sequence, lambda), oracle, 1e-12 * std::max(1.0, oracle));
    EXPECT_TRUE(consecutive_sets(p, in.joins));
    EXPECT_EQ(static_cast<int>(p.hole_sequence.size()), active_holes(in.joins));
  }
}

TEST(StringPathTest, LargeInstancesRespectConstraints) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PathInstance in = random_path_instance(1000 + seed, 30);
    const StringPath p = plan_string_path(in.net, in.joins, 5.0);
    EXPECT_TRUE(consecutive_sets(p, in.joins));
    EXPECT_EQ(static_cast<int>(p.hole_sequence.size()), active_holes(in.joins));
    std::set<int> distinct(p.hole_sequence.begin(), p.hole_sequence.end());
    EXPECT_EQ(distinct.size(), p.hole_sequence.size());
  }
}

TEST(StringPathTest, RigidAndScaleInvariance) {
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    const PathInstance in = random_path_instance(seed);
    const StringPath base = plan_string_path(in.net, in.joins, 7.0);
    PathInstance moved = in;
    const double a = 0.4 + 0.01 * static_cast<double>(seed);
    for (NetVertex& v : moved.net.vertices) {
      const Vec2 q = v.position;
      v.position = Vec2(std::cos(a) * q.x() - std::sin(a) * q.y() + 13, std::sin(a) * q.x() + std::cos(a) * q.y() - 4);
    }
    const StringPath r = plan_string_path(moved.net, moved.joins, 7.0);
    EXPECT_NEAR(r.cost, base.cost, 1e-9 * base.cost);
    PathInstance big = in;
    for (NetVertex& v : big.net.vertices) v.position *= 3.0;
    const StringPath s = plan_string_path(big.net, big.joins, 21.0);
    EXPECT_NEAR(s.total_length, 3.0 * base.total_length, 1e-9 * base.total_length);
    EXPECT_NEAR(s.total_turning, base.total_turning, 1e-9);
    EXPECT_EQ(s.hole_sequence, base.hole_sequence);
  }
}

TEST(StringPathTest, Deterministic) {
  const PathInstance in = random_path_instance(77);
  EXPECT_EQ(plan_string_path(in.net, in.joins, 2.0).hole_sequence, plan_string_path(in.net, in.joins, 2.0).hole_sequence);
}

TEST(StringPathTest, TurningAngleDefinition) {
  EXPECT_NEAR(turning_angle({0, 0}, {1, 0}, {2, 0}), 0.0, 1e-15);
  EXPECT_NEAR(turning_angle({0, 0}, {1, 0}, {1, 1}), kPi / 2, 1e-15);
  EXPECT_NEAR(turning_angle({0, 0}, {1, 0}, {0, 0}), kPi, 1e-15);
}

TEST(StringPathTest, DefaultLambdaIsMeanEdgeOverPi) {
  const Mesh cube = unit_cube();
  const Net net = place_faces(cube, cube_cross_tree(cube));
  // 5 creases and 14 boundary edges, all of unit length
  EXPECT_NEAR(default_lambda(net), 1.0 / kPi, 1e-12);
}

TEST(StringPathTest, PiecesPlannedSeparately) {
  const Mesh bunny = prepare_mesh(load_mesh(data_dir() / "bunny_96.obj")).mesh;
  const UnfoldResult r = unfold_with_fallback(bunny);
  ASSERT_GE(r.pieces.size(), 2u);
  for (std::size_t k = 0; k < r.pieces.size(); ++k) {
    const Piece& p = r.pieces[k];
    const JoinAnalysis j = prune_join_sets(p.net, compute_join_sets(p.mesh, p.net));
    const StringPath path = plan_string_path(p.net, j, default_lambda(p.net), static_cast<int>(k));
    EXPECT_EQ(path.piece, static_cast<int>(k));
    for (int v : path.hole_sequence) EXPECT_LT(v, static_cast<int>(p.net.vertices.size()));
    EXPECT_TRUE(consecutive_sets(path, j));
  }
}
