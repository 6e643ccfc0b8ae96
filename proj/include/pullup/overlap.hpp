#pragma once

#include "pullup/net.hpp"

#include <span>
#include <utility>
#include <vector>

namespace pullup {

namespace detail {

inline bool is_convex_ccw(std::span<const Vec2> poly) {
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const Vec2& c = poly[(i + 2) % n];
    if (cross2(b - a, c - b) < -1e-12 * (b - a).squaredNorm()) return false;
  }
  return true;
}

inline bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  return cross2(b - a, p - a) > 0 && cross2(c - b, p - b) > 0 && cross2(a - c, p - c) > 0;
}

/// Ear-clipping triangulation of a simple counter-clockwise polygon.
inline std::vector<std::vector<Vec2>> triangulate(std::vector<Vec2> poly) {
  std::vector<std::vector<Vec2>> out;
  std::size_t guard = 0;
  while (poly.size() > 3 && guard++ < 10000) {
    const std::size_t n = poly.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = poly[(i + n - 1) % n];
      const Vec2& b = poly[i];
      const Vec2& c = poly[(i + 1) % n];
      if (cross2(b - a, c - b) <= 0) continue;
      bool empty = true;
      for (std::size_t j = 0; j < n && empty; ++j) {
        if (j == i || j == (i + 1) % n || j == (i + n - 1) % n) continue;
        empty = !point_in_triangle(poly[j], a, b, c);
      }
      if (!empty) continue;
      out.push_back({a, b, c});
      poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
      break;
    }
    if (!clipped) break;  // numerically degenerate remainder: keep it whole
  }
  out.push_back(std::move(poly));
  return out;
}

/// Sutherland-Hodgman: convex `subject` clipped by convex counter-clockwise `clip`.
inline std::vector<Vec2> clip_convex(std::vector<Vec2> subject, std::span<const Vec2> clip) {
  for (std::size_t i = 0; i < clip.size() && !subject.empty(); ++i) {
    const Vec2& a = clip[i];
    const Vec2& b = clip[(i + 1) % clip.size()];
    std::vector<Vec2> next;
    const std::size_t n = subject.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2& p = subject[k];
      const Vec2& q = subject[(k + 1) % n];
      const double sp = cross2(b - a, p - a);
      const double sq = cross2(b - a, q - a);
      if (sp >= 0) next.push_back(p);
      if ((sp >= 0) != (sq >= 0)) next.push_back(p + (q - p) * (sp / (sp - sq)));
    }
    subject = std::move(next);
  }
  return subject;
}

}  // namespace detail

/// Convex pieces of a face polygon (the polygon itself when convex, otherwise ear triangles).
inline std::vector<std::vector<Vec2>> convex_pieces(const std::vector<Vec2>& poly) {
  std::vector<Vec2> ccw = poly;
  if (signed_area(ccw) < 0) std::reverse(ccw.begin(), ccw.end());
  if (detail::is_convex_ccw(ccw)) return {ccw};
  return detail::triangulate(std::move(ccw));
}

/// Area of the intersection of two simple polygons.
inline double intersection_area(const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
  double area = 0.0;
  const auto pp = convex_pieces(p);
  const auto qq = convex_pieces(q);
  for (const auto& a : pp) {
    for (const auto& b : qq) {
      const auto clipped = detail::clip_convex(a, b);
      if (clipped.size() >= 3) area += std::abs(signed_area(clipped));
    }
  }
  return area;
}

/// Unordered pairs (by face id, first < second) of faces whose interiors overlap by at
/// least 1e-9 times the net's bounding-box area. Contact along edges or at shared
/// vertices has zero area and is not reported.
inline std::vector<std::pair<int, int>> detect_overlaps(const Net& net) {
  std::vector<std::pair<int, int>> out;
  const int nf = static_cast<int>(net.faces.size());
  Box2 all;
  std::vector<Box2> boxes(nf);
  std::vector<std::vector<std::vector<Vec2>>> pieces(nf);
  for (int f = 0; f < nf; ++f) {
    for (const Vec2& c : net.faces[f].corners) {
      boxes[f].extend(c);
      all.extend(c);
    }
    pieces[f] = convex_pieces(net.faces[f].corners);
  }
  const double eps = 1e-9 * all.area();
  for (int f = 0; f < nf; ++f) {
    for (int g = f + 1; g < nf; ++g) {
      if (!boxes[f].overlaps(boxes[g])) continue;
      double area = 0.0;
      for (const auto& a : pieces[f]) {
        for (const auto& b : pieces[g]) {
          const auto clipped = detail::clip_convex(a, b);
          if (clipped.size() >= 3) area += std::abs(signed_area(clipped));
        }
      }
      if (area >= eps && area > 0.0) out.emplace_back(f, g);
    }
  }
  return out;
}

}  // namespace pullup
