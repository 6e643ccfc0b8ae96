#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace pullup {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

inline Vec2 perp_left(const Vec2& v) { return {-v.y(), v.x()}; }

/// Signed area, positive for counter-clockwise polygons.
inline double signed_area(std::span<const Vec2> poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    twice += cross2(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * twice;
}

/// Newell normal of a 3D polygon; its length is twice the polygon area.
inline Vec3 newell_normal(std::span<const Vec3> poly) {
  Vec3 n = Vec3::Zero();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec3& a = poly[i];
    const Vec3& b = poly[(i + 1) % poly.size()];
    n.x() += (a.y() - b.y()) * (a.z() + b.z());
    n.y() += (a.z() - b.z()) * (a.x() + b.x());
    n.z() += (a.x() - b.x()) * (a.y() + b.y());
  }
  return n;
}

struct Box2 {
  Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Vec2 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void extend(const Vec2& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  bool empty() const { return lo.x() > hi.x(); }
  double area() const { return empty() ? 0.0 : (hi - lo).prod(); }
  bool overlaps(const Box2& o, double slack = 0.0) const {
    return lo.x() <= o.hi.x() + slack && o.lo.x() <= hi.x() + slack && lo.y() <= o.hi.y() + slack &&
           o.lo.y() <= hi.y() + slack;
  }
};

template <class Range>
double bbox_diagonal(const Range& points) {
  if (std::begin(points) == std::end(points)) return 0.0;
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const Vec3& p : points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

/// Rigid motion p -> rotation * p + translation.
struct Rigid3 {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 operator()(const Vec3& p) const { return rotation * p + translation; }
  Rigid3 operator*(const Rigid3& inner) const {
    return {rotation * inner.rotation, rotation * inner.translation + translation};
  }

  /// Rotation by `angle` (right-hand rule) about the line through `origin` along `axis`.
  static Rigid3 about_axis(const Vec3& origin, const Vec3& axis, double angle) {
    Rigid3 r;
    r.rotation = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
    r.translation = origin - r.rotation * origin;
    return r;
  }
};

/// Least-squares rigid registration (Kabsch) of `from` onto `to`.
inline Rigid3 kabsch(std::span<const Vec3> from, std::span<const Vec3> to) {
  const auto n = static_cast<double>(from.size());
  Vec3 cf = Vec3::Zero();
  Vec3 ct = Vec3::Zero();
  for (std::size_t i = 0; i < from.size(); ++i) {
    cf += from[i];
    ct += to[i];
  }
  cf /= n;
  ct /= n;
  Mat3 h = Mat3::Zero();
  for (std::size_t i = 0; i < from.size(); ++i) h += (from[i] - cf) * (to[i] - ct).transpose();
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0) d(2, 2) = -1.0;
  Rigid3 r;
  r.rotation = svd.matrixV() * d * svd.matrixU().transpose();
  r.translation = ct - r.rotation * cf;
  return r;
}

/// splitmix64: portable, seedable and identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform direction on the unit sphere (rejection sampling in the cube).
  Vec3 unit_vector() {
    for (;;) {
      Vec3 v(2 * uniform() - 1, 2 * uniform() - 1, 2 * uniform() - 1);
      const double n2 = v.squaredNorm();
      if (n2 > 1e-6 && n2 <= 1.0) return v / std::sqrt(n2);
    }
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 g(seed ^ (salt * 0xD1B54A32D192ED03ULL));
  g.next();
  return g.next();
}

/// Minimal union-find with path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  /// Returns false if already joined. The smaller root wins so results are order-stable.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace pullup
