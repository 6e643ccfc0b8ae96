// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "fixtures.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace pullup;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

/// Largest distance between folded copies of one join set's members at t = 1.
double member_gap(const Net& net, const JoinSet& s, const FoldState& st) {
  std::vector<Vec3> q;
  for (int v : s.members) {
    for (int f : net.vertices[v].faces) {
      const auto& nv = net.faces[f].net_vertices;
      q.push_back(st.positions[f][std::find(nv.begin(), nv.end(), v) - nv.begin()]);
    }
  }
  double gap = 0;
  for (std::size_t a = 0; a < q.size(); ++a) {
    for (std::size_t b = a + 1; b < q.size(); ++b) gap = std::max(gap, (q[a] - q[b]).norm());
  }
  return gap;
}

Outcome platonic() {
  const auto t0 = std::chrono::steady_clock::now();
  int good = 0;
  for (const auto& p : platonic_files()) {
    const UnfoldResult r = unfold_with_fallback(load_prepared(p));
    if (r.pieces.size() == 1 && r.split_count == 0 && detect_overlaps(r.pieces[0].net).empty()) ++good;
  }
  const double t = seconds_since(t0);
  return {good == 5 && t < 1.0, fmt("%d/5 single-piece overlap-free, %.3f s", good, t)};
}

Outcome refold_round_trip() {
  int meshes = 0, failures = 0;
  double worst = 0;
  for (const auto& p : corpus_files()) {
    const Mesh m = load_prepared(p);
    UnfoldResult r;
    try {
      r = unfold_with_fallback(m);
    } catch (const UnfoldError&) {
      continue;
    }
    ++meshes;
    for (const Piece& piece : r.pieces) {
      const FoldState st = fold_state_at(piece.net, 1.0);
      const RefoldReport rep = verify_refold(piece.mesh, piece.net, st);
      worst = std::max(worst, rep.rmse / m.bbox_diagonal());
      bool ok = rep.passed;
      for (const JoinSet& s : compute_join_sets(piece.mesh, piece.net).sets) {
        ok = ok && member_gap(piece.net, s, st) <= rep.tolerance;
      }
      if (!ok) ++failures;
    }
  }
  return {failures == 0 && meshes > 0,
          fmt("%d meshes, %d failing, worst rmse/diagonal %.2e", meshes, failures, worst)};
}

Outcome join_oracle() {
  std::vector<fs::path> files = platonic_files();
  for (const auto& p : archimedean_files()) files.push_back(p);
  int nets = 0, mismatches = 0;
  for (const auto& p : files) {
    const Mesh m = load_prepared(p);
    for (Heuristic h : kAllHeuristics) {
      const Net net = place_faces(m, build_cut_tree(m, h, 0));
      const JoinAnalysis j = compute_join_sets(m, net);
      std::map<int, std::vector<int>> got;
      for (const JoinSet& s : j.sets) {
        if (got.count(s.mesh_vertex)) ++mismatches;
        got[s.mesh_vertex] = s.members;
      }
      if (got != copies_by_mesh_vertex(net)) ++mismatches;
      ++nets;
    }
  }
  return {mismatches == 0, fmt("%zu solids x 3 heuristics = %d nets, %d mismatches", files.size(), nets, mismatches)};
}

Outcome cube_pruning() {
  const Mesh cube = unit_cube();
  const Net net = place_faces(cube, cube_cross_tree(cube));
  const JoinAnalysis j = prune_join_sets(net, compute_join_sets(cube, net));
  int pairs = 0, pruned_pairs = 0, kept = 0;
  for (const JoinSet& s : j.sets) {
    if (s.members.size() == 2 && s.rigidity_depth == 1) {
      ++pairs;
      pruned_pairs += s.pruned ? 1 : 0;
    } else if (!s.pruned) {
      ++kept;
    }
  }
  const FoldState st = fold_state_at(net, 1.0);
  const RefoldReport rep = verify_refold(cube, net, st);
  bool closed = rep.passed;
  for (const JoinSet& s : j.sets) closed = closed && member_gap(net, s, st) <= rep.tolerance;
  return {pairs > 0 && pruned_pairs == pairs && closed,
          fmt("depth-1 pairs pruned %d/%d, retained sets %d, refold rmse %.1e", pruned_pairs, pairs, kept, rep.rmse)};
}

Outcome string_optimality() {
  const int n = 150;
  int exact = 0;
  double planner_time = 0;
  for (int i = 0; i < n; ++i) {
    const PathInstance in = random_path_instance(static_cast<std::uint64_t>(i) * 7919 + 1);
    const double lambda = 5.0 * (i % 5);
    const auto t0 = std::chrono::steady_clock::now();
    const StringPath p = plan_string_path(in.net, in.joins, lambda);
    planner_time += seconds_since(t0);
    const double oracle = brute_force_path_cost(in, lambda);
    if (std::abs(p.cost - oracle) <= 1e-12 * std::max(1.0, oracle)) ++exact;
  }
  return {exact == n && planner_time < 10.0, fmt("%d/%d at the enumeration minimum, planner %.3f s", exact, n, planner_time)};
}

Outcome spanning_trees() {
  int checks = 0, violations = 0;
  for (const auto& p : corpus_files()) {
    const Mesh m = load_prepared(p);
    for (Heuristic h : kAllHeuristics) {
      const CutTree t = build_cut_tree(m, h, 0);
      ++checks;
      const bool ok = static_cast<int>(t.fold_edges.size()) == m.face_count() - 1 &&
                      static_cast<int>(t.cut_edges.size()) == m.vertex_count() - 1 && fold_tree_ok(m, t) &&
                      cut_tree_ok(m, t);
      violations += ok ? 0 : 1;
    }
  }
  return {violations == 0 && checks > 0, fmt("%d trees, %d violations", checks, violations)};
}

bool classified(const std::string& status) {
  if (status == "ok" || status == "rejected" || status == "parse-error") return true;
  for (int c = 0; c <= static_cast<int>(ErrorCode::invalid_argument); ++c) {
    if (status == to_string(static_cast<ErrorCode>(c))) return true;
  }
  return false;
}

Outcome corpus_scale() {
  PipelineConfig cfg;
  cfg.write_files = false;
  const auto t0 = std::chrono::steady_clock::now();
  const CorpusReport rep = run_corpus(netlib_dir(), cfg);
  const double t = seconds_since(t0);
  int unsplit = 0, accounted = 0, max_faces = 0;
  for (const CorpusRow& row : rep.rows) {
    const PipelineResult& r = row.result;
    bool unfolded = r.status != to_string(ErrorCode::unfoldable_with_budget) && r.pieces.size() == 1 && r.split_count == 0;
    for (const PieceReport& pr : r.pieces) {
      unfolded = unfolded && pr.overlaps == 0;
      max_faces = std::max(max_faces, pr.faces);
    }
    unsplit += unfolded ? 1 : 0;
    accounted += classified(r.status) ? 1 : 0;
  }
  const double n = static_cast<double>(rep.rows.size());
  return {n > 0 && unsplit >= 0.9 * n && accounted == static_cast<int>(n) && t < 120.0,
          fmt("%zu solids: %d unfold unsplit (%.1f%%), %d full pipeline ok, %d classified failures, %.2f s",
              rep.rows.size(), unsplit, 100.0 * unsplit / n, rep.successes, rep.classified_failures, t)};
}

Outcome bunny() {
  PipelineConfig cfg;
  cfg.write_files = false;
  cfg.scale = 600;
  const PipelineResult r = run_pipeline(data_dir() / "bunny_96.obj", cfg);
  bool ok = r.exit_code == kExitOk;
  int faces = 0;
  for (const PieceReport& p : r.pieces) {
    ok = ok && p.overlaps == 0 && p.refold.passed;
    faces += p.faces;
  }
  return {ok && faces <= 100,
          fmt("%s, %d faces, %zu pieces, %d splits, %d holes, max rmse %.1e", r.status.c_str(), faces, r.pieces.size(),
              r.split_count, r.hole_count(), r.max_rmse())};
}

std::map<std::string, std::string> plan_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.path().filename() == "plan.json") out[fs::relative(e.path(), dir).string()] = read_file(e.path());
  }
  return out;
}

Outcome determinism() {
  const fs::path base = fs::temp_directory_path() / "pullup_acceptance_determinism";
  fs::remove_all(base);
  PipelineConfig cfg;
  cfg.jobs = 4;
  cfg.out = base / "a";
  const CorpusReport a = run_corpus(netlib_dir(), cfg);
  cfg.jobs = 1;
  cfg.out = base / "b";
  const CorpusReport b = run_corpus(netlib_dir(), cfg);
  const auto pa = plan_files(base / "a"), pb = plan_files(base / "b");
  const bool ok = a.csv == b.csv && pa == pb && !pa.empty();
  fs::remove_all(base);
  return {ok, fmt("CSV %s, %zu plan files %s", a.csv == b.csv ? "identical" : "differs", pa.size(),
                  pa == pb ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"platonic solids unfold as single overlap-free nets", platonic},
      {"refold round trip over the corpus", refold_round_trip},
      {"join sets equal the grouping oracle", join_oracle},
      {"cube cross net pruning", cube_pruning},
      {"string path optimality", string_optimality},
      {"spanning tree invariants", spanning_trees},
      {"corpus scale", corpus_scale},
      {"bunny pipeline", bunny},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
