#pragma once

#include "pullup/error.hpp"
#include "pullup/mesh.hpp"
#include "pullup/obj.hpp"

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pullup {

namespace detail {

// Netlib numbers may carry an exact form in brackets, e.g. "0.7071[1/2sqrt(2)]".
inline std::string strip_brackets(std::string_view line) {
  std::string out;
  int depth = 0;
  for (char c : line) {
    if (c == '[') {
      ++depth;
      out += ' ';
    } else if (c == ']') {
      depth = std::max(0, depth - 1);
    } else if (depth == 0) {
      out += c;
    }
  }
  return out;
}

/// Segment (p, q) against triangle (a, b, c); true only for proper crossings.
inline bool segment_crosses_triangle(const Vec3& p, const Vec3& q, const Vec3& a, const Vec3& b, const Vec3& c,
                                     double eps) {
  const Vec3 n = (b - a).cross(c - a);
  const double scale = n.norm();
  if (scale <= 0.0) return false;
  const double dp = n.dot(p - a) / scale;
  const double dq = n.dot(q - a) / scale;
  if ((dp > -eps && dq > -eps) || (dp < eps && dq < eps)) return false;
  const Vec3 x = p + (q - p) * (dp / (dp - dq));
  const double w0 = n.dot((b - a).cross(x - a));
  const double w1 = n.dot((c - b).cross(x - b));
  const double w2 = n.dot((a - c).cross(x - c));
  const double tol = eps * scale;
  return w0 > tol && w1 > tol && w2 > tol;
}

}  // namespace detail

/// True if two faces that share no vertex cross each other. Faces are fan-triangulated.
inline bool has_self_intersections(const Mesh& mesh) {
  const double eps = 1e-9 * std::max(mesh.bbox_diagonal(), 1e-300);
  std::vector<std::vector<std::array<Vec3, 3>>> tris(mesh.face_count());
  std::vector<std::pair<Vec3, Vec3>> boxes(mesh.face_count());
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto pts = mesh.face_points(f);
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) tris[f].push_back({pts[0], pts[i], pts[i + 1]});
    Vec3 lo = pts[0], hi = pts[0];
    for (const Vec3& p : pts) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    boxes[f] = {lo, hi};
  }
  auto shares_vertex = [&](int f, int g) {
    for (int a : mesh.faces()[f]) {
      for (int b : mesh.faces()[g]) {
        if (a == b) return true;
      }
    }
    return false;
  };
  for (int f = 0; f < mesh.face_count(); ++f) {
    for (int g = f + 1; g < mesh.face_count(); ++g) {
      if ((boxes[f].first.array() > boxes[g].second.array() + eps).any() ||
          (boxes[g].first.array() > boxes[f].second.array() + eps).any()) {
        continue;
      }
      if (shares_vertex(f, g)) continue;
      for (const auto& s : tris[f]) {
        for (const auto& t : tris[g]) {
          for (int k = 0; k < 3; ++k) {
            if (detail::segment_crosses_triangle(s[k], s[(k + 1) % 3], t[0], t[1], t[2], eps) ||
                detail::segment_crosses_triangle(t[k], t[(k + 1) % 3], s[0], s[1], s[2], eps)) {
              return true;
            }
          }
        }
      }
    }
  }
  return false;
}

/// Parses one entry of the Netlib polyhedra flat-file database.
///
/// Sections start with a `:keyword` line. `:solid` gives "F [maxdeg]" then F lines
/// "n i0 .. i(n-1)" (0-based). Coordinates come from `:vertices` ("V [V']" then one
/// "x y z" line per vertex) or, when that section is absent, from lines following
/// the faces inside `:solid`. Compounds (several components) and self-intersecting
/// solids are rejected as unsupported entries.
inline Mesh parse_netlib(std::string_view text, std::string label = {}) {
  std::map<std::string, std::vector<std::string>> sections;
  std::string current;
  detail::for_each_line(text, [&](int, std::string_view line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (!line.empty() && line.front() == ':') {
      current = std::string(line.substr(1));
      sections[current];
      return;
    }
    if (current.empty() || line.empty()) return;
    sections[current].emplace_back(line);
  });

  auto sit = sections.find("solid");
  if (sit == sections.end()) throw Error(ErrorCode::unsupported_entry, "no :solid section");
  if (auto n = sections.find("name"); n != sections.end() && !n->second.empty()) label = n->second.front();

  auto fail = [](const std::string& section, const std::string& what) {
    throw Error(ErrorCode::parse, "section :" + section + ": " + what);
  };
  auto numbers = [&](const std::string& section, const std::string& line) {
    std::vector<double> out;
    const std::string clean = detail::strip_brackets(line);
    for (auto tok : detail::split_ws(clean)) {
      double x = 0;
      if (!detail::parse_double(tok, x)) fail(section, "bad number '" + std::string(tok) + "'");
      out.push_back(x);
    }
    return out;
  };
  auto integers = [&](const std::string& section, const std::string& line) {
    std::vector<int> out;
    for (double x : numbers(section, line)) {
      if (x != std::floor(x)) fail(section, "expected an integer in '" + line + "'");
      out.push_back(static_cast<int>(x));
    }
    return out;
  };

  const auto& solid = sit->second;
  if (solid.empty()) fail("solid", "empty section");
  const auto header = integers("solid", solid[0]);
  if (header.empty() || header[0] < 1) fail("solid", "bad face count");
  const int nf = header[0];
  if (static_cast<int>(solid.size()) < nf + 1) fail("solid", "expected " + std::to_string(nf) + " face lines");
  std::vector<Face> faces;
  for (int f = 0; f < nf; ++f) {
    const auto row = integers("solid", solid[f + 1]);
    if (row.empty() || row[0] < 3 || static_cast<int>(row.size()) != row[0] + 1) {
      fail("solid", "malformed face line '" + solid[f + 1] + "'");
    }
    faces.emplace_back(row.begin() + 1, row.end());
  }

  std::vector<Vec3> vertices;
  auto read_coords = [&](const std::string& section, const std::vector<std::string>& lines, std::size_t from) {
    for (std::size_t i = from; i < lines.size(); ++i) {
      const auto xyz = numbers(section, lines[i]);
      if (xyz.size() != 3) fail(section, "expected 3 coordinates in '" + lines[i] + "'");
      vertices.emplace_back(xyz[0], xyz[1], xyz[2]);
    }
  };
  if (auto vit = sections.find("vertices"); vit != sections.end()) {
    if (vit->second.empty()) fail("vertices", "empty section");
    const auto counts = integers("vertices", vit->second[0]);
    if (counts.empty()) fail("vertices", "missing vertex count");
    read_coords("vertices", vit->second, 1);
    if (static_cast<int>(vertices.size()) < counts[0]) fail("vertices", "fewer coordinates than declared");
  } else {
    read_coords("solid", solid, static_cast<std::size_t>(nf) + 1);
  }
  if (vertices.empty()) fail("solid", "no vertex coordinates");
  for (const Face& f : faces) {
    for (int v : f) {
      if (v < 0 || v >= static_cast<int>(vertices.size())) {
        fail("solid", "vertex index " + std::to_string(v) + " out of range");
      }
    }
  }

  Mesh mesh(std::move(vertices), std::move(faces), std::move(label));

  DisjointSets comps(mesh.face_count());
  for (const Edge& e : mesh.edges()) {
    for (std::size_t k = 1; k < e.sides.size(); ++k) comps.unite(e.sides[0].face, e.sides[k].face);
  }
  for (int f = 1; f < mesh.face_count(); ++f) {
    if (comps.find(f) != comps.find(0)) throw Error(ErrorCode::unsupported_entry, "compound solid");
  }
  if (has_self_intersections(mesh)) throw Error(ErrorCode::unsupported_entry, "self-intersecting solid");
  return mesh;
}

}  // namespace pullup
