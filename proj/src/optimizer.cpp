#include "gatesim/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <thread>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "gatesim/engine.hpp"

namespace gatesim {
namespace {

struct SeedOutcome {
  double peak{0.0};
  double fluctuation{0.0};
  std::string error;
};

SeedOutcome run_one(const Scenario& base, std::span<const Cip> plan, std::uint64_t seed) {
  Scenario s = base;
  s.cips.assign(plan.begin(), plan.end());
  s.seed = seed;
  try {
    const RunResult r = run(s);
    return {global_peak(r.series, s.smoothing_width),
            fluctuation_score(r.series, s.smoothing_width), {}};
  } catch (const std::exception& e) {
    return {0.0, 0.0, e.what()};
  }
}

/// Evaluates fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

PlanScore score_plan(std::vector<Cip> plan, std::span<const SeedOutcome> outcomes,
                     Objective objective) {
  PlanScore score;
  score.plan = std::move(plan);
  for (const auto& o : outcomes) {
    if (!o.error.empty()) {
      score.valid = false;
      score.error = o.error;
    }
    score.seed_peaks.push_back(o.peak);
    score.seed_fluctuations.push_back(o.fluctuation);
  }
  const auto n = static_cast<double>(outcomes.size());
  if (n > 0) {
    score.mean_peak = std::accumulate(score.seed_peaks.begin(), score.seed_peaks.end(), 0.0) / n;
    score.fluctuation =
        std::accumulate(score.seed_fluctuations.begin(), score.seed_fluctuations.end(), 0.0) / n;
  }
  score.objective = objective == Objective::PeakDensity ? score.mean_peak
                                                        : score.mean_peak + score.fluctuation;
  return score;
}

std::string plan_label(const std::vector<Cip>& plan) {
  std::string out;
  for (const auto& c : plan)
    out += fmt::format("{}{}@{}", out.empty() ? "" : ";", c.x_pos, c.activation_time);
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (double d : v) out += fmt::format("{}{:.6f}", out.empty() ? "" : ";", d);
  return out;
}

}  // namespace

Objective objective_from_name(std::string_view name) {
  if (name == "peak_density") return Objective::PeakDensity;
  if (name == "peak_plus_fluctuation") return Objective::PeakPlusFluctuation;
  throw ConfigError(fmt::format("unknown objective '{}'", name));
}

std::string_view objective_name(Objective o) {
  return o == Objective::PeakDensity ? "peak_density" : "peak_plus_fluctuation";
}

PlanScore evaluate_plan(const Scenario& base, std::span<const Cip> plan,
                        std::span<const std::uint64_t> seeds, Objective objective,
                        unsigned jobs) {
  std::vector<SeedOutcome> outcomes(seeds.size());
  parallel_for(seeds.size(), jobs, [&](std::size_t i) { outcomes[i] = run_one(base, plan, seeds[i]); });
  return score_plan({plan.begin(), plan.end()}, outcomes, objective);
}

std::vector<std::vector<Cip>> plan_grid(const SweepSpec& spec) {
  std::vector<std::vector<Cip>> plans;
  if (spec.include_baseline) plans.emplace_back();
  for (double t : spec.times) {
    if (spec.cips_per_plan == 1) {
      for (double x : spec.positions) plans.push_back({{x, t}});
    } else {
      for (std::size_t i = 0; i < spec.positions.size(); ++i)
        for (std::size_t j = i + 1; j < spec.positions.size(); ++j)
          plans.push_back({{spec.positions[i], t}, {spec.positions[j], t}});
    }
  }
  return plans;
}

SweepResult sweep(const SweepSpec& spec) {
  if (spec.positions.empty() || spec.times.empty())
    throw ConfigError("sweep needs at least one position and one time");
  if (spec.cips_per_plan != 1 && spec.cips_per_plan != 2)
    throw ConfigError("cips_per_plan must be 1 or 2");
  if (spec.seeds.empty()) throw ConfigError("sweep needs at least one seed");
  validate(spec.base);

  const auto plans = plan_grid(spec);
  const std::size_t n_seeds = spec.seeds.size();
  std::vector<SeedOutcome> outcomes(plans.size() * n_seeds);
  parallel_for(outcomes.size(), spec.jobs, [&](std::size_t i) {
    outcomes[i] = run_one(spec.base, plans[i / n_seeds], spec.seeds[i % n_seeds]);
  });

  SweepResult result;
  for (std::size_t p = 0; p < plans.size(); ++p) {
    auto score = score_plan(plans[p], std::span(outcomes).subspan(p * n_seeds, n_seeds), spec.objective);
    (score.valid ? result.ranked : result.invalid).push_back(std::move(score));
  }
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const PlanScore& a, const PlanScore& b) {
                     if (a.objective != b.objective) return a.objective < b.objective;
                     if (a.fluctuation != b.fluctuation) return a.fluctuation < b.fluctuation;
                     return a.plan < b.plan;
                   });
  return result;
}

SweepSpec load_sweep_spec(const std::filesystem::path& grid_file, const Scenario& base,
                          std::size_t n_seeds) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(grid_file.string());
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("cannot read grid '{}': {}", grid_file.string(), e.what()));
  }
  if (!root.IsMap()) throw ConfigError("grid file must be a key-value map");
  SweepSpec spec;
  spec.base = base;
  try {
    for (const auto& kv : root) {
      const auto key = kv.first.as<std::string>();
      if (key == "positions") {
        spec.positions = kv.second.as<std::vector<double>>();
      } else if (key == "times") {
        spec.times = kv.second.as<std::vector<double>>();
      } else if (key == "cips_per_plan") {
        spec.cips_per_plan = kv.second.as<int>();
      } else if (key == "objective") {
        spec.objective = objective_from_name(kv.second.as<std::string>());
      } else if (key == "include_baseline") {
        spec.include_baseline = kv.second.as<bool>();
      } else {
        throw ConfigError(fmt::format("unknown grid key '{}'", key));
      }
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError(fmt::format("bad grid file: {}", e.what()));
  }
  if (spec.positions.empty() || spec.times.empty())
    throw ConfigError("grid needs non-empty positions and times");
  if (spec.cips_per_plan != 1 && spec.cips_per_plan != 2)
    throw ConfigError("cips_per_plan must be 1 or 2");
  if (n_seeds == 0) throw ConfigError("--seeds must be at least 1");
  for (std::size_t i = 0; i < n_seeds; ++i) spec.seeds.push_back(base.seed + i);
  for (double x : spec.positions)
    if (x < 0.0 || x > base.geometry.length) throw ConfigError("grid position outside [0, L]");
  for (double t : spec.times)
    if (t < 0.0) throw ConfigError("grid time must be >= 0");
  return spec;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "rank,plan,n_cips,objective,mean_peak,fluctuation,seed_peaks,seed_fluctuations,valid\n";
  std::size_t rank = 1;
  for (const auto& s : result.ranked) {
    out += fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{},{},1\n", rank++, plan_label(s.plan),
                       s.plan.size(), s.objective, s.mean_peak, s.fluctuation, join(s.seed_peaks),
                       join(s.seed_fluctuations));
  }
  for (const auto& s : result.invalid) {
    out += fmt::format(",{},{},,,,,,0\n", plan_label(s.plan), s.plan.size());
  }
  return out;
}

std::string best_plan_fragment(const PlanScore& best) {
  std::string cips;
  for (const auto& c : best.plan)
    cips += fmt::format("{}[{}, {}]", cips.empty() ? "" : ", ", c.x_pos, c.activation_time);
  return fmt::format("# best plan: mean peak {:.4f} p/m^2, fluctuation {:.4f}\ncips: [{}]\n",
                     best.mean_peak, best.fluctuation, cips);
}

}  // namespace gatesim
