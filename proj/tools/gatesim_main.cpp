// gatesim: batch driver for the corridor gate-closure simulator.
//
//   gatesim run      --config FILE [--seed U64] [--out DIR] [--frames STRIDE]
//   gatesim sweep    --config FILE --grid FILE --seeds K [--out DIR] [--jobs J]
//   gatesim validate --config FILE
//
// Exit codes: 0 ok, 1 config error, 2 numeric abort. When --out is omitted
// the GATESIM_OUT environment variable names the output directory.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gatesim/config.hpp"
#include "gatesim/engine.hpp"
#include "gatesim/optimizer.hpp"
#include "gatesim/output.hpp"

namespace fs = std::filesystem;
using namespace gatesim;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericAbort = 2;

/// Tracks files written into the output directory so an aborted run can
/// leave nothing half-written behind.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    if (!fs::exists(dir_)) {
      fs::create_directories(dir_);
      created_dir_ = true;
    }
  }

  fs::path file(const fs::path& rel) {
    const fs::path p = dir_ / rel;
    if (p.has_parent_path() && !fs::exists(p.parent_path())) {
      fs::create_directories(p.parent_path());
      dirs_.push_back(p.parent_path());
    }
    files_.push_back(p);
    return p;
  }

  void discard() {
    std::error_code ec;
    for (const auto& f : files_) fs::remove(f, ec);
    for (auto it = dirs_.rbegin(); it != dirs_.rend(); ++it) fs::remove(*it, ec);
    if (created_dir_) fs::remove(dir_, ec);
  }

 private:
  fs::path dir_;
  bool created_dir_{false};
  std::vector<fs::path> files_;
  std::vector<fs::path> dirs_;
};

fs::path resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("GATESIM_OUT"); env && *env) return env;
  throw ConfigError("no output directory: pass --out or set GATESIM_OUT");
}

int cmd_validate(const std::string& config) {
  const Scenario s = load_scenario(config);
  validate(s);
  const Geometry g = resolve_geometry(s);
  fmt::print("ok: N={} L={} H={} delta_t={} p={} D={} cips={} x_min={}\n", s.n_agents,
             s.geometry.length, s.geometry.height, s.params.delta_t, s.params.p_go_back,
             s.params.doubt_duration, s.cips.size(), g.x_min);
  return kOk;
}

int cmd_run(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out,
            std::size_t frames) {
  Scenario s = load_scenario(config);
  if (seed) s.seed = *seed;
  validate(s);
  OutputDir dir(resolve_out(out));

  RunHooks hooks;
  hooks.frame_stride = frames;
  hooks.on_frame = [&dir](const Simulation& sim) {
    write_text(dir.file(fs::path("frames") / frame_file_name(sim.step_index())),
               frame_csv(sim.population()));
  };
  try {
    const RunResult r = run(s, hooks);
    write_text(dir.file("densities.csv"), densities_csv(r.series));
    write_text(dir.file("events.csv"), events_csv(r.events));
    write_text(dir.file("run_meta.yaml"), run_meta(s, r));
    fmt::print("done: t_final={} steps={} removed={} transitions={} wall={:.1f}s\n", r.t_final,
               r.steps, r.n_removed, r.events.size(), r.wall_seconds);
  } catch (const NumericError&) {
    dir.discard();
    throw;
  }
  return kOk;
}

int cmd_sweep(const std::string& config, const std::string& grid, std::size_t n_seeds,
              const std::string& out, unsigned jobs) {
  const Scenario base = load_scenario(config);
  validate(base);
  SweepSpec spec = load_sweep_spec(grid, base, n_seeds);
  spec.jobs = jobs;
  OutputDir dir(resolve_out(out));
  const SweepResult result = sweep(spec);
  write_text(dir.file("sweep.csv"), sweep_csv(result));
  if (!result.ranked.empty()) {
    write_text(dir.file("best_plan.yaml"), best_plan_fragment(result.ranked.front()));
    const auto& best = result.ranked.front();
    fmt::print("best of {} plans: mean peak {:.3f} p/m^2 ({} invalid)\n", result.ranked.size(),
               best.mean_peak, result.invalid.size());
  } else {
    fmt::print("no valid plan ({} invalid)\n", result.invalid.size());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corridor gate-closure crowd simulator"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t frames = 0;
  std::string grid;
  std::size_t n_seeds = 5;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* run_cmd = app.add_subcommand("run", "Simulate one scenario");
  run_cmd->add_option("--config", config, "Scenario file")->required();
  run_cmd->add_option("--seed", seed, "Override the scenario seed");
  run_cmd->add_option("--out", out, "Output directory");
  run_cmd->add_option("--frames", frames, "Write a frame every STRIDE steps");

  auto* sweep_cmd = app.add_subcommand("sweep", "Brute-force control point placement");
  sweep_cmd->add_option("--config", config, "Base scenario file")->required();
  sweep_cmd->add_option("--grid", grid, "Grid file")->required();
  sweep_cmd->add_option("--seeds", n_seeds, "Number of seeds per plan");
  sweep_cmd->add_option("--out", out, "Output directory");
  sweep_cmd->add_option("--jobs", jobs, "Concurrent simulations");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  validate_cmd->add_option("--config", config, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*validate_cmd) return cmd_validate(config);
    if (*run_cmd) return cmd_run(config, seed, out, frames);
    if (*sweep_cmd) return cmd_sweep(config, grid, n_seeds, out, jobs);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericError& e) {
    std::cerr << "numeric abort: " << e.what() << '\n';
    return kNumericAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}
