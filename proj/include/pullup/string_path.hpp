#pragma once

#include "pullup/error.hpp"
#include "pullup/join_sets.hpp"
#include "pullup/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace pullup {

struct StringPath {
  int piece = 0;
  std::vector<int> hole_sequence;  ///< net vertex ids
  double total_length = 0;
  double total_turning = 0;
  double lambda = 0;
  double cost = 0;
};

/// Mean length of the net's edges (creases and boundary edges) divided by pi.
inline double default_lambda(const Net& net) {
  double sum = 0.0;
  int n = 0;
  for (const Crease& c : net.creases) {
    sum += (net.vertices[c.a].position - net.vertices[c.b].position).norm();
    ++n;
  }
  for (const NetEdge& e : net.boundary) {
    sum += (net.vertices[e.a].position - net.vertices[e.b].position).norm();
    ++n;
  }
  return n == 0 ? 0.0 : sum / n / kPi;
}

/// Turn at `b` between segments a-b and b-c: pi minus the included angle.
inline double turning_angle(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 u = a - b;
  const Vec2 w = c - b;
  return kPi - std::atan2(std::abs(cross2(u, w)), u.dot(w));
}

/// Length/turning/cost of a polyline. Terms are summed in sorted order so a path and
/// its reverse give bit-identical results.
inline StringPath evaluate_path(const std::vector<Vec2>& pts, double lambda) {
  StringPath p;
  p.lambda = lambda;
  std::vector<double> seg, turn;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) seg.push_back((pts[i + 1] - pts[i]).norm());
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) turn.push_back(turning_angle(pts[i - 1], pts[i], pts[i + 1]));
  std::sort(seg.begin(), seg.end());
  std::sort(turn.begin(), turn.end());
  for (double s : seg) p.total_length += s;
  for (double t : turn) p.total_turning += t;
  p.cost = p.total_length + lambda * p.total_turning;
  return p;
}

namespace detail {

struct PathProblem {
  std::vector<Vec2> pos;    ///< per hole
  std::vector<int> group;   ///< per hole: its set
  std::vector<int> id;      ///< per hole: net vertex id
  std::vector<unsigned> group_mask;
  double lambda = 0;

  int size() const { return static_cast<int>(pos.size()); }
  double step(int prev, int last, int next) const {
    const double len = (pos[next] - pos[last]).norm();
    return prev < 0 ? len : len + lambda * turning_angle(pos[prev], pos[last], pos[next]);
  }
  /// `next` may follow `last` given the holes in `mask` (set members stay consecutive).
  bool allowed(unsigned mask, int last, int next) const {
    if (mask & (1u << next)) return false;
    if (last < 0) return true;
    const unsigned own = group_mask[group[last]];
    if ((mask & own) != own) return group[next] == group[last];
    return (mask & group_mask[group[next]]) == 0;
  }
  std::vector<Vec2> points(const std::vector<int>& seq) const {
    std::vector<Vec2> out;
    for (int h : seq) out.push_back(pos[h]);
    return out;
  }
};

/// Exact search: dynamic programming gives the optimal cost-to-go of every
/// (visited, previous, last) state; a depth-first pass then enumerates every path
/// within rounding slack of the optimum and keeps the one with the smallest
/// order-independent cost (ties: lexicographically smallest id sequence).
inline std::vector<int> solve_exact(const PathProblem& pb) {
  const int n = pb.size();
  const unsigned full = (1u << n) - 1;
  const std::size_t stride = static_cast<std::size_t>(n + 1) * n;
  std::vector<double> memo((static_cast<std::size_t>(full) + 1) * stride, std::numeric_limits<double>::quiet_NaN());
  auto slot = [&](unsigned mask, int prev, int last) -> double& {
    return memo[mask * stride + static_cast<std::size_t>(prev + 1) * n + last];
  };
  auto go = [&](auto&& self, unsigned mask, int prev, int last) -> double {
    if (mask == full) return 0.0;
    double& m = slot(mask, prev, last);
    if (!std::isnan(m)) return m;
    double best = std::numeric_limits<double>::infinity();
    for (int next = 0; next < n; ++next) {
      if (!pb.allowed(mask, last, next)) continue;
      best = std::min(best, pb.step(prev, last, next) + self(self, mask | (1u << next), last, next));
    }
    return m = best;
  };
  double optimum = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s) optimum = std::min(optimum, go(go, 1u << s, -1, s));

  double scale = 1.0;
  for (const Vec2& p : pb.pos) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double slack = 1e-9 * (std::abs(optimum) + scale);

  std::vector<int> best_seq, seq;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<int> best_ids;
  long budget = 200000;
  auto dfs = [&](auto&& self, unsigned mask, int prev, int last, double partial) -> void {
    if (budget <= 0) return;
    if (mask == full) {
      --budget;
      const double c = evaluate_path(pb.points(seq), pb.lambda).cost;
      std::vector<int> ids;
      for (int h : seq) ids.push_back(pb.id[h]);
      if (c < best_cost || (c == best_cost && ids < best_ids)) {
        best_cost = c;
        best_seq = seq;
        best_ids = std::move(ids);
      }
      return;
    }
    for (int next = 0; next < n; ++next) {
      if (!pb.allowed(mask, last, next)) continue;
      const double g = partial + pb.step(prev, last, next);
      if (g + go(go, mask | (1u << next), last, next) > optimum + slack) continue;
      seq.push_back(next);
      self(self, mask | (1u << next), last, next, g);
      seq.pop_back();
    }
  };
  for (int s = 0; s < n; ++s) {
    if (go(go, 1u << s, -1, s) > optimum + slack) continue;
    seq = {s};
    dfs(dfs, 1u << s, -1, s, 0.0);
  }
  return best_seq;
}

/// Larger instances: nearest-neighbour construction, then block moves (segment
/// reversal and single-set relocation, each set kept contiguous) until no move improves.
inline std::vector<int> solve_heuristic(const PathProblem& pb) {
  const int n = pb.size();
  std::vector<bool> used(n, false);
  std::vector<int> seq{0};
  used[0] = true;
  while (static_cast<int>(seq.size()) < n) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    const int last = seq.back();
    bool own_open = false;
    for (int h = 0; h < n; ++h) {
      if (!used[h] && pb.group[h] == pb.group[last]) own_open = true;
    }
    for (int h = 0; h < n; ++h) {
      if (used[h]) continue;
      if (own_open && pb.group[h] != pb.group[last]) continue;
      const double d = (pb.pos[h] - pb.pos[last]).norm();
      if (d < best_d) {
        best_d = d;
        best = h;
      }
    }
    seq.push_back(best);
    used[best] = true;
  }

  // blocks: maximal runs of one set
  auto blocks_of = [&](const std::vector<int>& s) {
    std::vector<std::vector<int>> blocks;
    for (int h : s) {
      if (blocks.empty() || pb.group[blocks.back().front()] != pb.group[h]) blocks.emplace_back();
      blocks.back().push_back(h);
    }
    return blocks;
  };
  auto flatten = [](const std::vector<std::vector<int>>& blocks) {
    std::vector<int> s;
    for (const auto& b : blocks) s.insert(s.end(), b.begin(), b.end());
    return s;
  };
  auto cost = [&](const std::vector<int>& s) { return evaluate_path(pb.points(s), pb.lambda).cost; };

  double current = cost(seq);
  bool improved = true;
  int guard = 0;
  while (improved && guard++ < 1000) {
    improved = false;
    auto blocks = blocks_of(seq);
    const int nb = static_cast<int>(blocks.size());
    for (int i = 0; i < nb && !improved; ++i) {
      // reverse a single block's internal order
      auto cand = blocks;
      std::reverse(cand[i].begin(), cand[i].end());
      if (const auto s = flatten(cand); cost(s) < current - 1e-12) {
        seq = s;
        current = cost(s);
        improved = true;
        break;
      }
      for (int j = i + 1; j < nb && !improved; ++j) {
        cand = blocks;
        std::reverse(cand.begin() + i, cand.begin() + j + 1);
        for (int k = i; k <= j; ++k) std::reverse(cand[k].begin(), cand[k].end());
        if (const auto s = flatten(cand); cost(s) < current - 1e-12) {
          seq = s;
          current = cost(s);
          improved = true;
          break;
        }
        cand = blocks;
        auto moved = cand[i];
        cand.erase(cand.begin() + i);
        cand.insert(cand.begin() + j, moved);
        if (const auto s = flatten(cand); cost(s) < current - 1e-12) {
          seq = s;
          current = cost(s);
          improved = true;
        }
      }
    }
  }
  return seq;
}

}  // namespace detail

inline constexpr int kExactThreshold = 12;

/// Open string path through every active member of the unpruned join sets, each set
/// visited as one contiguous run; minimizes length + lambda * turning.
inline StringPath plan_string_path(const Net& net, const JoinAnalysis& joins, double lambda, int piece = 0) {
  detail::PathProblem pb;
  pb.lambda = lambda;
  for (const JoinSet& s : joins.sets) {
    if (s.pruned) continue;
    const auto act = s.active();
    unsigned gm = 0;
    for (int v : act) {
      if (pb.size() < 32) gm |= 1u << pb.size();
      pb.pos.push_back(net.vertices[v].position);
      pb.id.push_back(v);
      pb.group.push_back(static_cast<int>(pb.group_mask.size()));
    }
    pb.group_mask.push_back(gm);
  }
  StringPath path;
  path.piece = piece;
  path.lambda = lambda;
  if (pb.size() == 0) return path;
  if (pb.size() == 1) throw Error(ErrorCode::dangling_hole, "a single hole cannot be threaded");

  const std::vector<int> seq = pb.size() <= kExactThreshold ? detail::solve_exact(pb) : detail::solve_heuristic(pb);
  path = evaluate_path(pb.points(seq), lambda);
  path.piece = piece;
  for (int h : seq) path.hole_sequence.push_back(pb.id[h]);
  return path;
}

}  // namespace pullup
