#pragma once

#include "pullup/error.hpp"
#include "pullup/join_sets.hpp"
#include "pullup/net.hpp"
#include "pullup/string_path.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace pullup {

struct Hole {
  int id = 0;
  Vec2 center = Vec2::Zero();
  double radius = 0;
  int net_vertex = -1;
  int face = -1;
  int join_set = -1;
};

namespace detail {

/// Interior angle of a counter-clockwise polygon at corner i, in (0, 2pi).
inline double interior_angle(const std::vector<Vec2>& poly, std::size_t i) {
  const std::size_t n = poly.size();
  const Vec2 e1 = (poly[(i + n - 1) % n] - poly[i]).normalized();
  const Vec2 e2 = (poly[(i + 1) % n] - poly[i]).normalized();
  double a = std::atan2(cross2(e2, e1), e2.dot(e1));
  if (a <= 0) a += 2 * kPi;
  return a;
}

inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  const double s = len2 > 0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + s * d)).norm();
}

inline bool strictly_inside(const std::vector<Vec2>& poly, const Vec2& p) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y()) && p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x()) in = !in;
  }
  return in;
}

/// Hole at `inset` along the corner bisector; nullopt if it does not fit in the face.
inline std::optional<Vec2> hole_in_corner(const std::vector<Vec2>& poly, std::size_t i, double radius, double inset) {
  const std::size_t n = poly.size();
  const Vec2 e2 = (poly[(i + 1) % n] - poly[i]).normalized();
  const double half = 0.5 * interior_angle(poly, i);
  const Vec2 dir(std::cos(half) * e2.x() - std::sin(half) * e2.y(), std::sin(half) * e2.x() + std::cos(half) * e2.y());
  const Vec2 c = poly[i] + inset * dir;
  if (!strictly_inside(poly, c)) return std::nullopt;
  for (std::size_t k = 0; k < n; ++k) {
    if (point_segment_distance(c, poly[k], poly[(k + 1) % n]) <= radius) return std::nullopt;
  }
  return c;
}

}  // namespace detail

/// One hole per active member of every unpruned join set, placed in the member's face
/// corner with the widest interior angle (other faces at that vertex are fallbacks).
/// Throws hole-placement-failure naming the face when no corner can hold the hole.
inline std::vector<Hole> layout_holes(const Net& net, const JoinAnalysis& joins, double hole_radius, double inset) {
  if (!(hole_radius > 0) || !(inset > hole_radius)) {
    throw Error(ErrorCode::invalid_argument, "need 0 < hole_radius < inset");
  }
  std::vector<Hole> holes;
  for (std::size_t s = 0; s < joins.sets.size(); ++s) {
    if (joins.sets[s].pruned) continue;
    for (int v : joins.sets[s].active()) {
      std::vector<std::pair<double, std::pair<int, std::size_t>>> corners;
      for (int f : net.vertices[v].faces) {
        const auto& nvs = net.faces[f].net_vertices;
        for (std::size_t i = 0; i < nvs.size(); ++i) {
          if (nvs[i] == v) corners.push_back({detail::interior_angle(net.faces[f].corners, i), {f, i}});
        }
      }
      std::stable_sort(corners.begin(), corners.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      Hole h;
      h.id = static_cast<int>(holes.size());
      h.radius = hole_radius;
      h.net_vertex = v;
      h.join_set = static_cast<int>(s);
      bool placed = false;
      for (const auto& [angle, at] : corners) {
        if (auto c = detail::hole_in_corner(net.faces[at.first].corners, at.second, hole_radius, inset)) {
          h.center = *c;
          h.face = at.first;
          placed = true;
          break;
        }
      }
      if (!placed) {
        const int f = corners.empty() ? -1 : corners.front().second.first;
        throw Error(ErrorCode::hole_placement_failure,
                    "face " + std::to_string(f) + " is too small for a hole at net vertex " + std::to_string(v) +
                        " (inset " + std::to_string(inset) + ", radius " + std::to_string(hole_radius) +
                        "); increase the scale, or the inset for sharp corners");
      }
      holes.push_back(h);
    }
  }
  return holes;
}

struct PlanFace {
  int face = -1;  ///< face id in the source mesh
  std::vector<Vec2> corners;
  std::vector<int> net_vertices;
};

struct PlanVertex {
  Vec2 position = Vec2::Zero();
  int mesh_vertex = -1;  ///< vertex id in the source mesh
};

struct PlanSegment {
  int a = -1;  ///< net vertex ids
  int b = -1;
  int mesh_edge = -1;   ///< edge id in the piece mesh
  double fold_angle = 0;  ///< creases only
};

struct PlanJoinSet {
  int mesh_vertex = -1;
  std::vector<int> members;
  std::vector<int> removed;
  int depth = 0;
  bool pruned = false;
};

struct PiecePlan {
  int piece = 0;
  std::string heuristic;
  std::uint64_t attempt_seed = 0;
  int base_face = -1;
  std::vector<PlanVertex> vertices;
  std::vector<PlanFace> faces;
  std::vector<PlanSegment> cuts;
  std::vector<PlanSegment> creases;
  std::vector<PlanJoinSet> join_sets;
  std::vector<Hole> holes;
  std::vector<int> string_order;  ///< hole ids
  double string_length = 0;
  double string_turning = 0;
  double string_cost = 0;
  double lambda = 0;
};

struct PlanMetadata {
  std::string label;
  std::uint64_t seed = 0;
  double lambda = 0;  ///< 0 when chosen per piece from the mean edge length
  double scale = 1;   ///< mm per model unit
  double hole_radius = 0;
  double inset = 0;
  int split_count = 0;
};

struct FabricationPlan {
  int schema_version = 1;
  PlanMetadata metadata;
  std::vector<PiecePlan> pieces;
};

/// Assembles one piece of a plan. `net` must already be in sheet units (mm);
/// `face_map`/`vertex_map` translate piece ids back to the source mesh.
inline PiecePlan make_piece_plan(int piece, const Net& net, const std::vector<int>& face_map,
                                 const std::vector<int>& vertex_map, const JoinAnalysis& joins,
                                 const StringPath& path, const std::vector<Hole>& holes) {
  PiecePlan p;
  p.piece = piece;
  p.base_face = face_map[net.base_face];
  for (const NetVertex& v : net.vertices) p.vertices.push_back({v.position, vertex_map[v.mesh_vertex]});
  for (const PlacedFace& f : net.faces) p.faces.push_back({face_map[f.face], f.corners, f.net_vertices});
  for (const NetEdge& e : net.boundary) p.cuts.push_back({e.a, e.b, e.mesh_edge, 0.0});
  for (const Crease& c : net.creases) p.creases.push_back({c.a, c.b, c.mesh_edge, c.geometry.fold_angle});
  for (const JoinSet& s : joins.sets) {
    p.join_sets.push_back({vertex_map[s.mesh_vertex], s.members, s.removed, s.rigidity_depth, s.pruned});
  }
  p.holes = holes;
  for (int v : path.hole_sequence) {
    for (const Hole& h : holes) {
      if (h.net_vertex == v) p.string_order.push_back(h.id);
    }
  }
  p.string_length = path.total_length;
  p.string_turning = path.total_turning;
  p.string_cost = path.cost;
  p.lambda = path.lambda;
  return p;
}

// ---- JSON ----

namespace detail {

inline nlohmann::json vec_json(const Vec2& v) { return nlohmann::json::array({v.x(), v.y()}); }
inline Vec2 json_vec(const nlohmann::json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace detail

inline nlohmann::json to_json(const PiecePlan& p) {
  using nlohmann::json;
  json verts = json::array(), faces = json::array(), cuts = json::array(), creases = json::array();
  json sets = json::array(), holes = json::array();
  for (const auto& v : p.vertices) verts.push_back({{"position", detail::vec_json(v.position)}, {"mesh_vertex", v.mesh_vertex}});
  for (const auto& f : p.faces) {
    json c = json::array();
    for (const Vec2& q : f.corners) c.push_back(detail::vec_json(q));
    faces.push_back({{"face", f.face}, {"corners", c}, {"net_vertices", f.net_vertices}});
  }
  for (const auto& s : p.cuts) cuts.push_back({{"a", s.a}, {"b", s.b}, {"mesh_edge", s.mesh_edge}});
  for (const auto& s : p.creases) {
    creases.push_back({{"a", s.a}, {"b", s.b}, {"mesh_edge", s.mesh_edge}, {"fold_angle", s.fold_angle}});
  }
  for (const auto& s : p.join_sets) {
    sets.push_back({{"mesh_vertex", s.mesh_vertex},
                    {"members", s.members},
                    {"removed", s.removed},
                    {"depth", s.depth},
                    {"pruned", s.pruned}});
  }
  for (const auto& h : p.holes) {
    holes.push_back({{"id", h.id},
                     {"center", detail::vec_json(h.center)},
                     {"radius", h.radius},
                     {"net_vertex", h.net_vertex},
                     {"face", h.face},
                     {"join_set", h.join_set}});
  }
  return {{"piece", p.piece},
          {"heuristic", p.heuristic},
          {"attempt_seed", p.attempt_seed},
          {"base_face", p.base_face},
          {"vertices", verts},
          {"faces", faces},
          {"cuts", cuts},
          {"creases", creases},
          {"join_sets", sets},
          {"holes", holes},
          {"string",
           {{"order", p.string_order},
            {"length", p.string_length},
            {"turning", p.string_turning},
            {"cost", p.string_cost},
            {"lambda", p.lambda}}}};
}

inline nlohmann::json to_json(const FabricationPlan& plan) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& p : plan.pieces) pieces.push_back(to_json(p));
  const PlanMetadata& m = plan.metadata;
  return {{"schema_version", plan.schema_version},
          {"metadata",
           {{"label", m.label},
            {"seed", m.seed},
            {"lambda", m.lambda},
            {"scale", m.scale},
            {"hole_radius", m.hole_radius},
            {"inset", m.inset},
            {"split_count", m.split_count}}},
          {"pieces", pieces}};
}

/// Canonical JSON: keys sorted, shortest round-trip number formatting, 2-space indent.
inline std::string export_plan(const FabricationPlan& plan) { return to_json(plan).dump(2) + "\n"; }

inline FabricationPlan parse_plan(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("plan: ") + e.what());
  }
  FabricationPlan plan;
  try {
    plan.schema_version = j.at("schema_version").get<int>();
    if (plan.schema_version != 1) throw Error(ErrorCode::parse, "unsupported plan schema version");
    const json& m = j.at("metadata");
    plan.metadata = {m.at("label").get<std::string>(), m.at("seed").get<std::uint64_t>(),
                     m.at("lambda").get<double>(),      m.at("scale").get<double>(),
                     m.at("hole_radius").get<double>(), m.at("inset").get<double>(),
                     m.at("split_count").get<int>()};
    for (const json& pj : j.at("pieces")) {
      PiecePlan p;
      p.piece = pj.at("piece").get<int>();
      p.heuristic = pj.at("heuristic").get<std::string>();
      p.attempt_seed = pj.at("attempt_seed").get<std::uint64_t>();
      p.base_face = pj.at("base_face").get<int>();
      for (const json& v : pj.at("vertices")) p.vertices.push_back({detail::json_vec(v.at("position")), v.at("mesh_vertex").get<int>()});
      for (const json& f : pj.at("faces")) {
        PlanFace pf;
        pf.face = f.at("face").get<int>();
        for (const json& c : f.at("corners")) pf.corners.push_back(detail::json_vec(c));
        pf.net_vertices = f.at("net_vertices").get<std::vector<int>>();
        p.faces.push_back(std::move(pf));
      }
      for (const json& s : pj.at("cuts")) p.cuts.push_back({s.at("a").get<int>(), s.at("b").get<int>(), s.at("mesh_edge").get<int>(), 0.0});
      for (const json& s : pj.at("creases")) {
        p.creases.push_back({s.at("a").get<int>(), s.at("b").get<int>(), s.at("mesh_edge").get<int>(), s.at("fold_angle").get<double>()});
      }
      for (const json& s : pj.at("join_sets")) {
        p.join_sets.push_back({s.at("mesh_vertex").get<int>(), s.at("members").get<std::vector<int>>(),
                               s.at("removed").get<std::vector<int>>(), s.at("depth").get<int>(), s.at("pruned").get<bool>()});
      }
      for (const json& h : pj.at("holes")) {
        p.holes.push_back({h.at("id").get<int>(), detail::json_vec(h.at("center")), h.at("radius").get<double>(),
                           h.at("net_vertex").get<int>(), h.at("face").get<int>(), h.at("join_set").get<int>()});
      }
      const json& s = pj.at("string");
      p.string_order = s.at("order").get<std::vector<int>>();
      p.string_length = s.at("length").get<double>();
      p.string_turning = s.at("turning").get<double>();
      p.string_cost = s.at("cost").get<double>();
      p.lambda = s.at("lambda").get<double>();
      plan.pieces.push_back(std::move(p));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("plan: ") + e.what());
  }
  return plan;
}

// ---- SVG ----

struct SvgStyle {
  std::string cut_color = "#ff0000";
  std::string fold_color = "#0000ff";
  std::string annot_color = "#000000";
  double stroke_width = 0.1;  ///< mm
  std::string fold_dash = "2,1";
  double font_size = 3.0;  ///< mm
  double margin = 5.0;     ///< mm
};

namespace detail {

inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

/// Boundary loops as net vertex cycles, following cut edges head to tail.
inline std::vector<std::vector<int>> boundary_loops(const PiecePlan& p) {
  std::vector<bool> used(p.cuts.size(), false);
  std::vector<std::vector<int>> loops;
  for (std::size_t start = 0; start < p.cuts.size(); ++start) {
    if (used[start]) continue;
    std::vector<int> loop;
    std::size_t cur = start;
    while (!used[cur]) {
      used[cur] = true;
      loop.push_back(p.cuts[cur].a);
      const int head = p.cuts[cur].b;
      std::size_t next = cur;
      for (std::size_t k = 0; k < p.cuts.size(); ++k) {
        if (!used[k] && p.cuts[k].a == head) {
          next = k;
          break;
        }
      }
      if (next == cur) break;
      cur = next;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

struct SvgFrame {
  Box2 box;
  double margin = 0;
  double width() const { return box.hi.x() - box.lo.x() + 2 * margin; }
  double height() const { return box.hi.y() - box.lo.y() + 2 * margin; }
  Vec2 map(const Vec2& p) const { return {p.x() - box.lo.x() + margin, box.hi.y() - p.y() + margin}; }
};

inline void check_finite(const PiecePlan& p) {
  for (const auto& v : p.vertices) {
    if (!v.position.allFinite()) throw Error(ErrorCode::invalid_argument, "non-finite net coordinate");
  }
  for (const auto& h : p.holes) {
    if (!h.center.allFinite() || !std::isfinite(h.radius)) throw Error(ErrorCode::invalid_argument, "non-finite hole");
  }
}

inline std::string piece_groups(const PiecePlan& p, const SvgFrame& fr, const Vec2& offset, const SvgStyle& st) {
  std::string out;
  auto pt = [&](int v) {
    const Vec2 q = fr.map(p.vertices[v].position) + offset;
    return fmt6(q.x()) + " " + fmt6(q.y());
  };
  out += "  <g id=\"cut\" fill=\"none\" stroke=\"" + st.cut_color + "\" stroke-width=\"" + fmt6(st.stroke_width) + "\">\n";
  for (const auto& loop : boundary_loops(p)) {
    out += "    <path d=\"M " + pt(loop.front());
    for (std::size_t i = 1; i < loop.size(); ++i) out += " L " + pt(loop[i]);
    out += " Z\"/>\n";
  }
  for (const Hole& h : p.holes) {
    const Vec2 c = fr.map(h.center) + offset;
    out += "    <circle cx=\"" + fmt6(c.x()) + "\" cy=\"" + fmt6(c.y()) + "\" r=\"" + fmt6(h.radius) + "\"/>\n";
  }
  out += "  </g>\n";
  out += "  <g id=\"fold\" fill=\"none\" stroke=\"" + st.fold_color + "\" stroke-width=\"" + fmt6(st.stroke_width) +
         "\" stroke-dasharray=\"" + st.fold_dash + "\">\n";
  for (const PlanSegment& c : p.creases) out += "    <path d=\"M " + pt(c.a) + " L " + pt(c.b) + "\"/>\n";
  out += "  </g>\n";
  out += "  <g id=\"annot\" fill=\"" + st.annot_color + "\" font-family=\"sans-serif\" font-size=\"" + fmt6(st.font_size) + "\">\n";
  for (std::size_t k = 0; k < p.string_order.size(); ++k) {
    const Hole& h = p.holes[p.string_order[k]];
    const Vec2 c = fr.map(h.center) + offset + Vec2(h.radius, -h.radius);
    out += "    <text x=\"" + fmt6(c.x()) + "\" y=\"" + fmt6(c.y()) + "\">" + std::to_string(k + 1) + "</text>\n";
  }
  out += "  </g>\n";
  return out;
}

inline SvgFrame frame_of(const PiecePlan& p, double margin) {
  SvgFrame fr;
  fr.margin = margin;
  for (const auto& v : p.vertices) fr.box.extend(v.position);
  return fr;
}

inline std::string svg_header(double w, double h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt6(w) + "mm\" height=\"" + fmt6(h) +
         "mm\" viewBox=\"0 0 " + fmt6(w) + " " + fmt6(h) + "\">\n";
}

}  // namespace detail

/// SVG 1.1 for one piece; one user unit is one millimetre, y points down.
inline std::string export_svg(const PiecePlan& piece, const SvgStyle& style = {}) {
  if (piece.vertices.empty() || piece.faces.empty()) throw Error(ErrorCode::invalid_argument, "empty net");
  detail::check_finite(piece);
  const detail::SvgFrame fr = detail::frame_of(piece, style.margin);
  return detail::svg_header(fr.width(), fr.height()) + detail::piece_groups(piece, fr, Vec2::Zero(), style) + "</svg>\n";
}

/// All pieces on one sheet, shelf-packed by bounding box (tallest first), each piece in
/// its own group.
inline std::string export_layout_svg(const FabricationPlan& plan, double sheet_width = 600.0, const SvgStyle& style = {}) {
  std::vector<detail::SvgFrame> frames;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < plan.pieces.size(); ++i) {
    if (plan.pieces[i].vertices.empty()) throw Error(ErrorCode::invalid_argument, "empty net");
    detail::check_finite(plan.pieces[i]);
    frames.push_back(detail::frame_of(plan.pieces[i], style.margin));
    order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frames[a].height() > frames[b].height(); });
  double width = sheet_width;
  for (const auto& f : frames) width = std::max(width, f.width());
  std::vector<Vec2> offset(frames.size(), Vec2::Zero());
  double x = 0, y = 0, shelf = 0;
  for (std::size_t i : order) {
    if (x > 0 && x + frames[i].width() > width) {
      x = 0;
      y += shelf;
      shelf = 0;
    }
    offset[i] = {x, y};
    x += frames[i].width();
    shelf = std::max(shelf, frames[i].height());
  }
  std::string body;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::string groups = detail::piece_groups(plan.pieces[i], frames[i], offset[i], style);
    // group ids must stay unique across pieces
    for (const char* g : {"cut", "fold", "annot"}) {
      const std::string from = std::string("id=\"") + g + "\"";
      const std::string to = std::string("id=\"") + g + "-" + std::to_string(plan.pieces[i].piece) + "\" class=\"" + g + "\"";
      groups.replace(groups.find(from), from.size(), to);
    }
    body += " <g id=\"piece-" + std::to_string(plan.pieces[i].piece) + "\">\n" + groups + " </g>\n";
  }
  return detail::svg_header(width, y + shelf) + body + "</svg>\n";
}

}  // namespace pullup
