#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <regex>

using namespace pullup;
using namespace fixtures;

namespace {

/// Single-face net with all corners in one join set.
PathInstance polygon_net(const std::vector<Vec2>& corners) {
  PathInstance in;
  PlacedFace f;
  f.face = 0;
  f.corners = corners;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    NetVertex v;
    v.position = corners[i];
    v.mesh_vertex = static_cast<int>(i);
    v.faces = {0};
    in.net.vertices.push_back(v);
    f.net_vertices.push_back(static_cast<int>(i));
  }
  in.net.faces = {f};
  JoinSet s;
  s.members = {0};
  in.joins.sets = {s};
  in.joins.depth.assign(corners.size(), 0);
  in.joins.depth[0] = 1;
  in.joins.set_of.assign(corners.size(), -1);
  in.joins.set_of[0] = 0;
  return in;
}

PipelineConfig quiet_config() {
  PipelineConfig c;
  c.write_files = false;
  return c;
}

FabricationPlan cube_plan() {
  const PipelineResult r = run_pipeline_on(unit_cube(), quiet_config());
  EXPECT_EQ(r.exit_code, kExitOk) << r.message;
  return *r.plan;
}

struct SvgPath {
  std::vector<Vec2> points;
  bool closed = false;
};

std::string group_body(const std::string& svg, const std::string& id) {
  const auto start = svg.find("id=\"" + id + "\"");
  if (start == std::string::npos) return {};
  const auto end = svg.find("</g>", start);
  return svg.substr(start, end - start);
}

std::vector<SvgPath> parse_paths(const std::string& body) {
  std::vector<SvgPath> out;
  const std::regex path_re("<path d=\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(body.begin(), body.end(), path_re); it != std::sregex_iterator(); ++it) {
    SvgPath p;
    std::stringstream ss((*it)[1].str());
    std::string tok;
    while (ss >> tok) {
      if (tok == "M" || tok == "L") {
        double x, y;
        ss >> x >> y;
        p.points.emplace_back(x, y);
      } else if (tok == "Z") {
        p.closed = true;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

double path_length(const SvgPath& p) {
  double s = 0;
  for (std::size_t i = 0; i + 1 < p.points.size(); ++i) s += (p.points[i + 1] - p.points[i]).norm();
  if (p.closed) s += (p.points.front() - p.points.back()).norm();
  return s;
}

int count_of(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST(Holes, UnitSquareCornerOnBisector) {
  const PathInstance in = polygon_net({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto holes = layout_holes(in.net, in.joins, 0.02, 0.1);
  ASSERT_EQ(holes.size(), 1u);
  EXPECT_NEAR(holes[0].center.x(), 0.1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(holes[0].center.y(), 0.1 / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(holes[0].net_vertex, 0);
  EXPECT_EQ(holes[0].face, 0);
  EXPECT_DOUBLE_EQ(holes[0].radius, 0.02);
}

TEST(Holes, SharpCornerFailsAndNamesFace) {
  const PathInstance in = polygon_net({{0, 0}, {10, 0}, {0, 0.5}});
  try {
    layout_holes(in.net, in.joins, 1.5, 4.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::hole_placement_failure);
    EXPECT_NE(std::string(e.what()).find("face 0"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("scale"), std::string::npos);
  }
}

TEST(Holes, InvalidRadiusRejected) {
  const PathInstance in = polygon_net({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  EXPECT_THROW(layout_holes(in.net, in.joins, 0.2, 0.1), Error);
  EXPECT_THROW(layout_holes(in.net, in.joins, 0.0, 0.1), Error);
}

TEST(Holes, TetrahedronStarGetsThree) {
  const Mesh tet = prepare_mesh(regular_tetrahedron()).mesh;
  const Net net = scaled(place_faces(tet, tetra_star_tree(tet)), 20.0);
  const JoinAnalysis j = prune_join_sets(net, compute_join_sets(tet, net));
  const auto holes = layout_holes(net, j, 1.5, 4.0);
  EXPECT_EQ(holes.size(), 3u);
  for (const Hole& h : holes) {
    const auto& c = net.faces[h.face].corners;
    EXPECT_TRUE(pullup::detail::strictly_inside(c, h.center));
    for (std::size_t i = 0; i < c.size(); ++i) {
      EXPECT_GE(pullup::detail::point_segment_distance(h.center, c[i], c[(i + 1) % c.size()]), h.radius);
    }
  }
}

TEST(Holes, CountEqualsActiveMembersOnCorpus) {
  for (const auto& p : corpus_range(0, 17)) {
    const Mesh m = load_prepared(p);
    const Net net = scaled(place_faces(m, build_cut_tree(m, Heuristic::steepest_edge, 0)), 50.0);
    const JoinAnalysis j = prune_join_sets(net, compute_join_sets(m, net));
    std::size_t expected = 0;
    for (const JoinSet& s : j.sets) {
      if (!s.pruned) expected += s.active().size();
    }
    EXPECT_EQ(layout_holes(net, j, 1.5, 4.0).size(), expected) << p;
  }
}

TEST(Svg, CubeCutAndFoldGeometry) {
  const FabricationPlan plan = cube_plan();
  ASSERT_EQ(plan.pieces.size(), 1u);
  const PiecePlan& piece = plan.pieces[0];
  const std::string svg = export_svg(piece);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  const auto cut = parse_paths(group_body(svg, "cut"));
  ASSERT_EQ(cut.size(), 1u);
  EXPECT_TRUE(cut[0].closed);
  EXPECT_NEAR(path_length(cut[0]), 14 * plan.metadata.scale, 1e-4);
  const auto folds = parse_paths(group_body(svg, "fold"));
  EXPECT_EQ(folds.size(), 5u);
  for (const auto& f : folds) EXPECT_NEAR(path_length(f), plan.metadata.scale, 1e-4);
  EXPECT_NE(group_body(svg, "fold").find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(count_of(group_body(svg, "cut"), "<circle"), static_cast<int>(piece.holes.size()));
  EXPECT_EQ(count_of(group_body(svg, "annot"), "<text"), static_cast<int>(piece.string_order.size()));
}

TEST(Svg, CutLengthIsTwiceCutEdgeLength) {
  for (const auto& p : corpus_range(0, 10)) {
    const Mesh m = load_prepared(p);
    const PipelineResult r = run_pipeline_on(m, quiet_config());
    ASSERT_TRUE(r.plan) << p;
    const PiecePlan& piece = r.plan->pieces[0];
    double edges = 0;
    std::set<int> cut_edges;
    for (const PlanSegment& s : piece.cuts) cut_edges.insert(s.mesh_edge);
    for (int e : cut_edges) edges += m.edge_length(e) * r.plan->metadata.scale;
    double svg_len = 0;
    for (const auto& path : parse_paths(group_body(export_svg(piece), "cut"))) svg_len += path_length(path);
    EXPECT_NEAR(svg_len, 2 * edges, 1e-5 * edges) << p;
  }
}

TEST(Svg, CoordinatesMatchPlan) {
  const FabricationPlan plan = cube_plan();
  const PiecePlan& piece = plan.pieces[0];
  const SvgStyle style;
  Box2 box;
  for (const auto& v : piece.vertices) box.extend(v.position);
  std::vector<Vec2> expected;
  for (const auto& v : piece.vertices) {
    expected.emplace_back(v.position.x() - box.lo.x() + style.margin, box.hi.y() - v.position.y() + style.margin);
  }
  for (const auto& path : parse_paths(export_svg(piece, style))) {
    for (const Vec2& q : path.points) {
      double best = 1e300;
      for (const Vec2& e : expected) best = std::min(best, (e - q).norm());
      EXPECT_LT(best, 1e-6);
    }
  }
}

TEST(Svg, ZeroHolesStillValid) {
  PiecePlan piece = cube_plan().pieces[0];
  piece.holes.clear();
  piece.string_order.clear();
  const std::string svg = export_svg(piece);
  EXPECT_EQ(count_of(svg, "<circle"), 0);
  EXPECT_NE(svg.find("id=\"annot\""), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, EmptyAndNonFiniteRejected) {
  EXPECT_THROW(export_svg(PiecePlan{}), Error);
  PiecePlan piece = cube_plan().pieces[0];
  piece.vertices[0].position.x() = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(export_svg(piece), Error);
}

TEST(Svg, LayoutHasOneGroupPerPiece) {
  PipelineConfig cfg = quiet_config();
  cfg.scale = 600;
  const PipelineResult r = run_pipeline(data_dir() / "bunny_96.obj", cfg);
  ASSERT_EQ(r.exit_code, kExitOk) << r.message;
  const std::string svg = export_layout_svg(*r.plan);
  EXPECT_EQ(count_of(svg, "<g id=\"piece-"), static_cast<int>(r.plan->pieces.size()));
  for (const PiecePlan& p : r.plan->pieces) {
    EXPECT_EQ(count_of(svg, "id=\"cut-" + std::to_string(p.piece) + "\""), 1);
  }
}

TEST(Plan, CubeCreasesAndMetadata) {
  const FabricationPlan plan = cube_plan();
  EXPECT_EQ(plan.schema_version, 1);
  EXPECT_EQ(plan.metadata.label, "cube");
  EXPECT_EQ(plan.metadata.seed, 0u);
  const PiecePlan& p = plan.pieces[0];
  EXPECT_EQ(p.faces.size(), 6u);
  ASSERT_EQ(p.creases.size(), 5u);
  for (const PlanSegment& c : p.creases) EXPECT_NEAR(c.fold_angle, kPi / 2, 1e-12);
  EXPECT_EQ(p.cuts.size(), 14u);
  EXPECT_FALSE(p.heuristic.empty());
}

TEST(Plan, JsonRoundTripIsByteIdentical) {
  for (const auto& p : corpus_range(0, 17)) {
    const PipelineResult r = run_pipeline_on(load_prepared(p), quiet_config());
    if (!r.plan) continue;
    const std::string text = export_plan(*r.plan);
    EXPECT_EQ(export_plan(parse_plan(text)), text) << p;
  }
}

TEST(Plan, MalformedJsonIsParseError) {
  try {
    parse_plan("{\"schema_version\": 1}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::parse);
  }
  EXPECT_THROW(parse_plan("not json"), Error);
}
