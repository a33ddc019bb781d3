#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "gatesim/optimizer.hpp"

using namespace gatesim;

namespace {

Scenario small_base() {
  Scenario s = default_scenario();
  s.n_agents = 150;
  s.t_end = 60.0;
  s.params.delta_t = 20.0;
  return s;
}

bool same_score(const PlanScore& a, const PlanScore& b) {
  return a.plan == b.plan && a.mean_peak == b.mean_peak && a.fluctuation == b.fluctuation &&
         a.objective == b.objective && a.seed_peaks == b.seed_peaks &&
         a.seed_fluctuations == b.seed_fluctuations && a.valid == b.valid;
}

}  // namespace

TEST_CASE("objective names") {
  CHECK(objective_from_name("peak_density") == Objective::PeakDensity);
  CHECK(objective_from_name("peak_plus_fluctuation") == Objective::PeakPlusFluctuation);
  CHECK(objective_name(Objective::PeakPlusFluctuation) == "peak_plus_fluctuation");
  CHECK_THROWS_AS(objective_from_name("fastest"), ConfigError);
}

TEST_CASE("plan evaluation is deterministic and independent of threads") {
  const Scenario base = small_base();
  const std::vector<Cip> plan{{78.0, 20.0}};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const PlanScore a = evaluate_plan(base, plan, seeds, Objective::PeakDensity, 1);
  const PlanScore b = evaluate_plan(base, plan, seeds, Objective::PeakDensity, 3);
  CHECK(same_score(a, b));
  REQUIRE(a.seed_peaks.size() == 3);
  double mean = 0.0;
  for (double p : a.seed_peaks) mean += p / 3.0;
  CHECK(a.mean_peak == doctest::Approx(mean));
  CHECK(a.objective == a.mean_peak);

  const PlanScore c = evaluate_plan(base, plan, seeds, Objective::PeakPlusFluctuation, 2);
  CHECK(c.objective == doctest::Approx(c.mean_peak + c.fluctuation));
}

TEST_CASE("grid enumeration") {
  SweepSpec spec;
  spec.base = small_base();
  spec.positions = {26.0, 52.0, 78.0};
  spec.times = {0.0, 20.0};
  spec.seeds = {1};
  auto grid = plan_grid(spec);
  CHECK(grid.size() == 1 + 3 * 2);
  CHECK(grid.front().empty());

  spec.include_baseline = false;
  spec.cips_per_plan = 2;
  grid = plan_grid(spec);
  CHECK(grid.size() == 3 * 2);
  for (const auto& plan : grid) {
    REQUIRE(plan.size() == 2);
    CHECK(plan[0].x_pos != plan[1].x_pos);
    CHECK(plan[0].activation_time == plan[1].activation_time);
  }
}

TEST_CASE("one-point sweep equals a direct evaluation") {
  SweepSpec spec;
  spec.base = small_base();
  spec.positions = {78.0};
  spec.times = {20.0};
  spec.seeds = {1, 2, 3};
  spec.include_baseline = false;
  spec.jobs = 2;
  const SweepResult r = sweep(spec);
  REQUIRE(r.ranked.size() == 1);
  const std::vector<Cip> plan{{78.0, 20.0}};
  CHECK(same_score(r.ranked[0], evaluate_plan(spec.base, plan, spec.seeds)));
}

TEST_CASE("sweep ranks every plan and is repeatable") {
  SweepSpec spec;
  spec.base = small_base();
  spec.positions = {52.0, 104.0};
  spec.times = {0.0, 20.0};
  spec.seeds = {1, 2, 3};
  spec.jobs = 2;
  const SweepResult a = sweep(spec);
  CHECK(a.ranked.size() + a.invalid.size() == plan_grid(spec).size());
  CHECK(a.invalid.empty());
  for (std::size_t i = 1; i < a.ranked.size(); ++i)
    CHECK(a.ranked[i - 1].objective <= a.ranked[i].objective);

  spec.jobs = 1;
  const SweepResult b = sweep(spec);
  REQUIRE(a.ranked.size() == b.ranked.size());
  for (std::size_t i = 0; i < a.ranked.size(); ++i) CHECK(same_score(a.ranked[i], b.ranked[i]));
  CHECK(sweep_csv(a) == sweep_csv(b));

  const std::string csv = sweep_csv(a);
  CHECK(csv.rfind("rank,plan,n_cips,objective,mean_peak,fluctuation,seed_peaks,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(a.ranked.size()));
  CHECK(best_plan_fragment(a.ranked[0]).find("cips:") != std::string::npos);
}

TEST_CASE("failing runs mark the plan invalid") {
  SweepSpec spec;
  spec.base = small_base();
  spec.positions = {500.0};  // outside the corridor, rejected by validation
  spec.times = {20.0};
  spec.seeds = {1, 2, 3};
  const SweepResult r = sweep(spec);
  CHECK(r.ranked.size() == 1);  // the baseline
  REQUIRE(r.invalid.size() == 1);
  CHECK_FALSE(r.invalid[0].valid);
  CHECK_FALSE(r.invalid[0].error.empty());
}

TEST_CASE("grid file loading") {
  const auto path = std::filesystem::temp_directory_path() / "gatesim_grid_test.yaml";
  {
    std::ofstream out(path);
    out << "positions: [26, 78]\ntimes: [20]\ncips_per_plan: 2\n"
           "objective: peak_plus_fluctuation\ninclude_baseline: false\n";
  }
  Scenario base = small_base();
  base.seed = 40;
  const SweepSpec spec = load_sweep_spec(path, base, 3);
  CHECK(spec.positions == std::vector<double>{26.0, 78.0});
  CHECK(spec.times == std::vector<double>{20.0});
  CHECK(spec.cips_per_plan == 2);
  CHECK(spec.objective == Objective::PeakPlusFluctuation);
  CHECK_FALSE(spec.include_baseline);
  CHECK(spec.seeds == std::vector<std::uint64_t>{40, 41, 42});

  {
    std::ofstream out(path);
    out << "positions: [26]\ntimes: []\n";
  }
  CHECK_THROWS_AS(load_sweep_spec(path, base, 3), ConfigError);
  {
    std::ofstream out(path);
    out << "positions: [26]\ntimes: [0]\nspeed: 3\n";
  }
  CHECK_THROWS_AS(load_sweep_spec(path, base, 3), ConfigError);
  std::filesystem::remove(path);
}
