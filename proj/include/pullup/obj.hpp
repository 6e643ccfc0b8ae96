#pragma once

#include "pullup/error.hpp"
#include "pullup/mesh.hpp"

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace pullup {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_int(std::string_view s, long long& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    fn(number, text.substr(start, end - start));
    if (end == text.size()) break;
    start = end + 1;
  }
}

}  // namespace detail

/// Parses the `v`/`f` subset of Wavefront OBJ. Face indices are 1-based; negative
/// indices count back from the latest vertex. Other records are ignored.
inline Mesh parse_obj(std::string_view text, std::string label = {}) {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<int> face_lines;
  auto fail = [](int line, const std::string& what) {
    throw Error(ErrorCode::parse, "line " + std::to_string(line) + ": " + what);
  };
  detail::for_each_line(text, [&](int line_no, std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = detail::split_ws(line);
    if (tok.empty()) return;
    if (tok[0] == "v") {
      if (tok.size() < 4 || tok.size() > 5) fail(line_no, "vertex record needs 3 coordinates");
      Vec3 p;
      for (int k = 0; k < 3; ++k) {
        if (!detail::parse_double(tok[k + 1], p[k])) fail(line_no, "bad coordinate '" + std::string(tok[k + 1]) + "'");
      }
      vertices.push_back(p);
    } else if (tok[0] == "f") {
      if (tok.size() < 4) fail(line_no, "face record needs at least 3 vertices");
      Face face;
      for (std::size_t k = 1; k < tok.size(); ++k) {
        const std::string_view ref = tok[k].substr(0, tok[k].find('/'));
        long long idx = 0;
        if (!detail::parse_int(ref, idx) || idx == 0) fail(line_no, "bad vertex reference '" + std::string(tok[k]) + "'");
        const long long resolved = idx > 0 ? idx - 1 : static_cast<long long>(vertices.size()) + idx;
        face.push_back(static_cast<int>(resolved));
      }
      faces.push_back(std::move(face));
      face_lines.push_back(line_no);
    }
  });
  const auto nv = static_cast<long long>(vertices.size());
  for (std::size_t f = 0; f < faces.size(); ++f) {
    for (int v : faces[f]) {
      if (v < 0 || v >= nv) {
        throw Error(ErrorCode::index_out_of_range, "line " + std::to_string(face_lines[f]) + ": vertex index " +
                                          std::to_string(v + 1) + " out of range (" + std::to_string(nv) +
                                          " vertices)");
      }
    }
  }
  return Mesh(std::move(vertices), std::move(faces), std::move(label));
}

/// Writes `v`/`f` records with round-trip (17 significant digit) coordinates.
inline std::string serialize_obj(const Mesh& mesh) {
  std::string out;
  if (!mesh.label().empty()) out += "# " + mesh.label() + "\n";
  char buf[128];
  for (const Vec3& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x(), p.y(), p.z());
    out += buf;
  }
  for (const Face& f : mesh.faces()) {
    out += 'f';
    for (int v : f) out += ' ' + std::to_string(v + 1);
    out += '\n';
  }
  return out;
}

}  // namespace pullup
