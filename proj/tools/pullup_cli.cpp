// pullup: unfold a mesh into a pull-up net, or run a whole corpus.
#include "pullup/pullup.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using pullup::PipelineConfig;

std::vector<pullup::Heuristic> parse_heuristics(const std::string& list) {
  std::vector<pullup::Heuristic> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    auto h = pullup::heuristic_from_string(item);
    if (!h) throw pullup::Error(pullup::ErrorCode::invalid_argument, "unknown heuristic '" + item + "'");
    out.push_back(*h);
  }
  return out;
}

/// Applies the keys of a JSON config file; unknown keys are an error.
void apply_config_file(const std::string& path, PipelineConfig& cfg) {
  const nlohmann::json j = nlohmann::json::parse(pullup::read_file(path));
  for (const auto& [key, value] : j.items()) {
    if (key == "heuristic") {
      cfg.heuristics.clear();
      if (value.is_array()) {
        for (const auto& v : value) {
          auto h = parse_heuristics(v.get<std::string>());
          cfg.heuristics.insert(cfg.heuristics.end(), h.begin(), h.end());
        }
      } else {
        cfg.heuristics = parse_heuristics(value.get<std::string>());
      }
    } else if (key == "attempts") {
      cfg.attempts_per_heuristic = value.get<int>();
    } else if (key == "max_splits") {
      cfg.max_splits = value.get<int>();
    } else if (key == "lambda") {
      cfg.lambda = value.get<double>();
    } else if (key == "hole_radius") {
      cfg.hole_radius = value.get<double>();
    } else if (key == "inset") {
      cfg.inset = value.get<double>();
    } else if (key == "scale") {
      cfg.scale = value.get<double>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      cfg.out = value.get<std::string>();
    } else if (key == "frames") {
      cfg.frames = value.get<int>();
    } else if (key == "jobs") {
      cfg.jobs = value.get<int>();
    } else {
      throw pullup::Error(pullup::ErrorCode::invalid_argument, "unknown config key '" + key + "'");
    }
  }
}

struct Flags {
  std::string config, heuristic, out;
  std::uint64_t seed = 0;
  int max_splits = 0, attempts = 0, frames = 0, jobs = 1;
  double lambda = 0, scale = 0, hole_radius = 0, inset = 0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its values");
  cmd->add_option("--heuristic", f.heuristic, "comma-separated order: steepest-edge,greatest-increase,bfs-largest-face");
  cmd->add_option("--seed", f.seed, "random seed (default 0)");
  cmd->add_option("--attempts", f.attempts, "seeds tried per heuristic (default 8)");
  cmd->add_option("--max-splits", f.max_splits, "split depth budget (default 3)");
  cmd->add_option("--lambda", f.lambda, "turning weight in mm per radian (default: mean edge / pi)");
  cmd->add_option("--scale", f.scale, "mm per model unit (default 50)");
  cmd->add_option("--hole-radius", f.hole_radius, "hole radius in mm (default 1.5)");
  cmd->add_option("--inset", f.inset, "hole inset from the corner in mm (default 12)");
  cmd->add_option("--frames", f.frames, "number of animation frames to export (0 = none)");
  cmd->add_option("--out", f.out, "output directory (default ./out)");
}

PipelineConfig resolve(CLI::App* cmd, const Flags& f) {
  PipelineConfig cfg;
  if (!f.config.empty()) apply_config_file(f.config, cfg);
  auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
  if (given("--heuristic")) cfg.heuristics = parse_heuristics(f.heuristic);
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--attempts")) cfg.attempts_per_heuristic = f.attempts;
  if (given("--max-splits")) cfg.max_splits = f.max_splits;
  if (given("--lambda")) cfg.lambda = f.lambda;
  if (given("--scale")) cfg.scale = f.scale;
  if (given("--hole-radius")) cfg.hole_radius = f.hole_radius;
  if (given("--inset")) cfg.inset = f.inset;
  if (given("--frames")) cfg.frames = f.frames;
  if (given("--out")) cfg.out = f.out;
  if (given("--jobs")) cfg.jobs = f.jobs;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unfold polyhedral meshes into pull-up nets with string routing and laser-cut output"};
  app.require_subcommand(1);

  Flags uf;
  std::string input;
  auto* unfold = app.add_subcommand("unfold", "unfold one OBJ or Netlib file");
  unfold->add_option("input", input, "mesh file (.obj, otherwise Netlib)")->required();
  add_common(unfold, uf);

  Flags cf;
  std::string dir;
  auto* corpus = app.add_subcommand("corpus", "run every file in a directory and write corpus.csv");
  corpus->add_option("dir", dir, "directory of mesh files")->required();
  add_common(corpus, cf);
  corpus->add_option("--jobs", cf.jobs, "worker threads (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pullup::kExitValidation;
  }

  try {
    if (unfold->parsed()) {
      const PipelineConfig cfg = resolve(unfold, uf);
      const pullup::PipelineResult r = pullup::run_pipeline(input, cfg);
      if (r.validation && !r.validation->accepted) {
        std::cerr << pullup::to_json(*r.validation).dump(2) << '\n';
      }
      if (!r.message.empty() && r.exit_code != 0) std::cerr << r.message << '\n';
      std::cout << pullup::summary_line(r) << '\n';
      if (!r.run_dir.empty() && r.exit_code != pullup::kExitValidation) std::cout << "artifacts: " << r.run_dir.string() << '\n';
      return r.exit_code;
    }
    const PipelineConfig cfg = resolve(corpus, cf);
    if (const std::string bad = cfg.check(); !bad.empty()) {
      std::cerr << bad << '\n';
      return pullup::kExitValidation;
    }
    const pullup::CorpusReport rep = pullup::run_corpus(dir, cfg);
    std::filesystem::create_directories(cfg.out);
    pullup::write_file(cfg.out / "corpus.csv", rep.csv);
    pullup::write_file(cfg.out / "corpus_summary.txt", rep.summary);
    std::cout << rep.summary;
    return pullup::kExitOk;
  } catch (const pullup::Error& e) {
    std::cerr << e.what() << '\n';
    return e.code() == pullup::ErrorCode::invalid_argument ? pullup::kExitValidation : pullup::kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return pullup::kExitInternal;
  }
}
