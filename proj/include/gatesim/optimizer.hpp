#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gatesim/scenario.hpp"

namespace gatesim {

enum class Objective { PeakDensity, PeakPlusFluctuation };

Objective objective_from_name(std::string_view name);
std::string_view objective_name(Objective o);

/// Brute-force search space over control point placements.
struct SweepSpec {
  Scenario base;
  std::vector<double> positions;
  std::vector<double> times;
  int cips_per_plan{1};  // 1, or 2 (distinct position pairs sharing one time)
  std::vector<std::uint64_t> seeds;
  Objective objective{Objective::PeakDensity};
  bool include_baseline{true};  // also score the plan without control points
  unsigned jobs{1};
};

struct PlanScore {
  std::vector<Cip> plan;
  double mean_peak{0.0};    // mean over seeds of the smoothed global peak
  double fluctuation{0.0};  // mean over seeds of fluctuation_score
  double objective{0.0};
  std::vector<double> seed_peaks;
  std::vector<double> seed_fluctuations;
  bool valid{true};
  std::string error;
};

/// Runs `base` with `plan` replacing its control points once per seed.
/// Runs are spread over `jobs` threads; results do not depend on `jobs`.
PlanScore evaluate_plan(const Scenario& base, std::span<const Cip> plan,
                        std::span<const std::uint64_t> seeds,
                        Objective objective = Objective::PeakDensity, unsigned jobs = 1);

/// Every plan of the spec's grid, baseline first when requested.
std::vector<std::vector<Cip>> plan_grid(const SweepSpec& spec);

struct SweepResult {
  std::vector<PlanScore> ranked;  // ascending objective, then fluctuation, then plan
  std::vector<PlanScore> invalid;
};

SweepResult sweep(const SweepSpec& spec);

/// Grid files are YAML maps with keys positions, times, cips_per_plan,
/// objective and include_baseline. Seeds are base.seed + i, i < n_seeds.
SweepSpec load_sweep_spec(const std::filesystem::path& grid_file, const Scenario& base,
                          std::size_t n_seeds);

std::string sweep_csv(const SweepResult& result);

/// Config fragment (cips key only) for the top-ranked plan.
std::string best_plan_fragment(const PlanScore& best);

}  // namespace gatesim
