#pragma once

#include "pullup/fabricate.hpp"
#include "pullup/fold_sim.hpp"
#include "pullup/join_sets.hpp"
#include "pullup/netlib.hpp"
#include "pullup/obj.hpp"
#include "pullup/string_path.hpp"
#include "pullup/unfold.hpp"
#include "pullup/validate.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace pullup {

struct PipelineConfig {
  std::vector<Heuristic> heuristics{kAllHeuristics.begin(), kAllHeuristics.end()};
  int attempts_per_heuristic = 8;
  int max_splits = 3;
  double lambda = 0;  ///< 0: mean net edge length / pi, per piece
  double hole_radius = 1.5;
  double inset = 12.0;
  double scale = 50.0;  ///< mm per model unit
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
  int frames = 0;
  int jobs = 1;
  bool write_files = true;

  /// Empty when valid, otherwise the first problem found.
  std::string check() const {
    if (heuristics.empty()) return "at least one heuristic is required";
    if (attempts_per_heuristic < 1) return "attempts must be positive";
    if (max_splits < 0) return "max-splits must be non-negative";
    if (lambda < 0) return "lambda must be non-negative";
    if (!(scale > 0)) return "scale must be positive";
    if (!(hole_radius > 0)) return "hole-radius must be positive";
    if (!(inset > hole_radius)) return "inset must exceed hole-radius";
    if (frames < 0 || frames == 1) return "frames must be 0 or at least 2";
    if (jobs < 1) return "jobs must be positive";
    return {};
  }
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

struct PieceReport {
  int faces = 0;
  int overlaps = 0;
  int holes = 0;
  double string_cost = 0;
  RefoldReport refold;
};

struct PipelineResult {
  int exit_code = kExitInternal;
  std::string status;  ///< "ok" or an error code name
  std::string message;
  std::string label;
  bool accepted = false;
  int split_count = 0;
  std::vector<PieceReport> pieces;
  std::optional<ValidationReport> validation;
  std::optional<FabricationPlan> plan;
  std::filesystem::path run_dir;

  int hole_count() const {
    int n = 0;
    for (const auto& p : pieces) n += p.holes;
    return n;
  }
  double string_cost() const {
    double c = 0;
    for (const auto& p : pieces) c += p.string_cost;
    return c;
  }
  double max_rmse() const {
    double r = 0;
    for (const auto& p : pieces) r = std::max(r, p.refold.rmse);
    return r;
  }
  bool refold_passed() const {
    for (const auto& p : pieces) {
      if (!p.refold.passed) return false;
    }
    return !pieces.empty();
  }
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
}

/// OBJ by extension `.obj`, Netlib flat file otherwise.
inline Mesh load_mesh(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const std::string label = path.stem().string();
  auto ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".obj" ? parse_obj(text, label) : parse_netlib(text, label);
}

/// Unfold, plan joins and string, place holes, verify the refold and (optionally)
/// write artifacts to `<out>/<label>-seed<N>/`.
inline PipelineResult run_pipeline_on(const Mesh& input, const PipelineConfig& config) {
  PipelineResult res;
  res.label = input.label();
  if (const std::string bad = config.check(); !bad.empty()) {
    res.exit_code = kExitValidation;
    res.status = to_string(ErrorCode::invalid_argument);
    res.message = bad;
    return res;
  }
  res.run_dir = config.out / (input.label() + "-seed" + std::to_string(config.seed));
  auto ensure_dir = [&] {
    if (config.write_files) std::filesystem::create_directories(res.run_dir);
  };

  PreparedMesh prepared = prepare_mesh(input);
  res.validation = prepared.report;
  res.accepted = prepared.report.accepted;
  if (!res.accepted) {
    res.exit_code = kExitValidation;
    res.status = "rejected";
    res.message = prepared.report.violations.empty() ? "rejected" : prepared.report.violations.front().message;
    if (config.write_files) {
      ensure_dir();
      write_file(res.run_dir / "validation.json", to_json(prepared.report).dump(2) + "\n");
    }
    return res;
  }
  const Mesh& mesh = prepared.mesh;

  UnfoldConfig uc;
  uc.heuristics = config.heuristics;
  uc.attempts_per_heuristic = config.attempts_per_heuristic;
  uc.max_splits = config.max_splits;
  uc.seed = config.seed;
  UnfoldResult unfolded;
  bool budget_exhausted = false;
  try {
    unfolded = unfold_with_fallback(mesh, uc);
  } catch (const UnfoldError& e) {
    unfolded = e.best();
    budget_exhausted = true;
    res.status = to_string(e.code());
    res.message = e.what();
  }
  res.split_count = unfolded.split_count;

  FabricationPlan plan;
  plan.metadata = {mesh.label(), config.seed, config.lambda, config.scale, config.hole_radius, config.inset,
                   unfolded.split_count};
  for (const Piece& piece : unfolded.pieces) {
    PieceReport pr;
    pr.faces = piece.mesh.face_count();
    pr.overlaps = static_cast<int>(piece.overlaps.size());
    if (!piece.net.faces.empty()) pr.refold = verify_refold(piece.mesh, piece.net, fold_state_at(piece.net, 1.0));
    res.pieces.push_back(pr);
  }
  std::optional<Error> fabrication_error;
  try {
    for (std::size_t k = 0; k < unfolded.pieces.size(); ++k) {
      const Piece& piece = unfolded.pieces[k];
      if (piece.net.faces.empty()) continue;
      const Net sheet = scaled(piece.net, config.scale);
      const JoinAnalysis joins = prune_join_sets(sheet, compute_join_sets(piece.mesh, sheet));
      const double lambda = config.lambda > 0 ? config.lambda : default_lambda(sheet);
      const StringPath path = plan_string_path(sheet, joins, lambda, static_cast<int>(k));
      const std::vector<Hole> holes = layout_holes(sheet, joins, config.hole_radius, config.inset);
      PiecePlan pp = make_piece_plan(static_cast<int>(k), sheet, piece.face_map, piece.vertex_map, joins, path, holes);
      pp.heuristic = std::string(to_string(piece.tree.heuristic));
      pp.attempt_seed = piece.attempt_seed;
      res.pieces[k].holes = static_cast<int>(holes.size());
      res.pieces[k].string_cost = path.cost;
      plan.pieces.push_back(std::move(pp));
      if (config.write_files && config.frames >= 2) {
        export_frames(piece.net, config.frames, res.run_dir / ("frames_piece" + std::to_string(k)));
      }
    }
  } catch (const Error& e) {
    fabrication_error = e;
  }
  if (!fabrication_error) res.plan = plan;

  if (config.write_files) {
    ensure_dir();
    if (res.plan) {
      write_file(res.run_dir / "plan.json", export_plan(plan));
      for (const PiecePlan& pp : plan.pieces) {
        write_file(res.run_dir / ("piece" + std::to_string(pp.piece) + ".svg"), export_svg(pp));
      }
      if (plan.pieces.size() > 1) write_file(res.run_dir / "layout.svg", export_layout_svg(plan));
    }
    nlohmann::json refold = nlohmann::json::array();
    for (std::size_t k = 0; k < res.pieces.size(); ++k) {
      nlohmann::json r = to_json(res.pieces[k].refold);
      r["piece"] = k;
      r["overlaps"] = res.pieces[k].overlaps;
      refold.push_back(r);
    }
    write_file(res.run_dir / "refold.json", refold.dump(2) + "\n");
  }

  if (budget_exhausted) {
    res.exit_code = kExitBudget;
    return res;
  }
  if (fabrication_error) {
    res.exit_code = kExitInternal;
    res.status = to_string(fabrication_error->code());
    res.message = fabrication_error->what();
    return res;
  }
  if (!res.refold_passed()) {
    res.exit_code = kExitInternal;
    res.status = "refold-failed";
    res.message = "folded net does not reproduce the mesh";
    return res;
  }
  res.exit_code = kExitOk;
  res.status = "ok";
  return res;
}

inline PipelineResult run_pipeline(const std::filesystem::path& input, const PipelineConfig& config) {
  try {
    return run_pipeline_on(load_mesh(input), config);
  } catch (const Error& e) {
    PipelineResult res;
    res.label = input.stem().string();
    const bool input_problem = e.code() == ErrorCode::parse || e.code() == ErrorCode::index_out_of_range ||
                               e.code() == ErrorCode::unsupported_entry || e.code() == ErrorCode::io;
    res.exit_code = input_problem ? kExitValidation : kExitInternal;
    res.status = e.code() == ErrorCode::unsupported_entry ? to_string(e.code()) : input_problem ? "parse-error" : to_string(e.code());
    res.message = e.what();
    return res;
  }
}

inline std::string summary_line(const PipelineResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: %s pieces=%zu splits=%d holes=%d string_cost=%.6g refold_rmse=%.3g", r.label.c_str(),
                r.status.c_str(), r.pieces.size(), r.split_count, r.hole_count(), r.string_cost(), r.max_rmse());
  return buf;
}

struct CorpusRow {
  std::string name;
  PipelineResult result;
  double wall_seconds = 0;
};

struct CorpusReport {
  std::vector<CorpusRow> rows;  ///< sorted by name
  std::string csv;              ///< deterministic: no timings
  std::string summary;
  int unsplit_successes = 0;
  int successes = 0;
  int classified_failures = 0;
};

/// Every regular file in `dir`, processed on `config.jobs` workers; rows ordered by
/// file name. Timings go to the human summary only, so the CSV is reproducible.
inline CorpusReport run_corpus(const std::filesystem::path& dir, const PipelineConfig& config) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  CorpusReport rep;
  rep.rows.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      CorpusRow row;
      row.name = files[i].filename().string();
      row.result = run_pipeline(files[i], config);
      row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      rep.rows[i] = std::move(row);
    }
  };
  std::vector<std::thread> pool;
  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(files.size())));
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv = "name,status,accepted,pieces,split_count,holes,string_cost,refold_rmse,refold_passed\n";
  std::string summary;
  double total_time = 0;
  for (const CorpusRow& row : rep.rows) {
    const PipelineResult& r = row.result;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%zu,%d,%d,%.9g,%.3e,%d\n", row.name.c_str(), r.status.c_str(), r.accepted ? 1 : 0,
                  r.pieces.size(), r.split_count, r.hole_count(), r.string_cost(), r.max_rmse(), r.refold_passed() ? 1 : 0);
    csv += buf;
    std::snprintf(buf, sizeof buf, "%-48s %-24s %8.3f s\n", row.name.c_str(), r.status.c_str(), row.wall_seconds);
    summary += buf;
    total_time += row.wall_seconds;
    if (r.exit_code == kExitOk) {
      ++rep.successes;
      if (r.split_count == 0) ++rep.unsplit_successes;
    } else {
      ++rep.classified_failures;
    }
  }
  const std::size_t n = rep.rows.size();
  char buf[256];
  std::snprintf(buf, sizeof buf, "solids: %zu  success: %d  single-piece: %d  failures: %d  wall: %.2f s\n", n,
                rep.successes, rep.unsplit_successes, rep.classified_failures, total_time);
  rep.summary = summary + buf;
  rep.csv = std::move(csv);
  return rep;
}

}  // namespace pullup
