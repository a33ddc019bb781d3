#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "gatesim/behavior.hpp"
#include "gatesim/dynamics.hpp"
#include "gatesim/measurement.hpp"
#include "gatesim/scenario.hpp"

namespace gatesim {

struct Population {
  std::vector<Agent> agents;  // agents[i].id == i
  std::vector<Group> groups;  // groups[g].id == g
};

/// Splits n into group sizes drawn uniformly from [min_size, max_size]. The
/// last draw is clipped to the remainder; a remainder of one joins the
/// previous group.
std::vector<int> partition_group_sizes(std::size_t n, int min_size, int max_size,
                                       std::mt19937_64& rng);

/// Random initial crowd: groups of contiguous ids, first member leads,
/// group centres uniform in the block [L - front_gap - W0, L - front_gap] x
/// [0, H], members uniform in a disc around the centre. Everyone starts in
/// status 1 with one history sample at t = 0.
Population init_population(const Scenario& scenario, std::mt19937_64& rng);

/// Fresh history buffers sized for the scenario's stall window.
void reset_histories(Population& population, const Scenario& scenario);

/// Stepping state of one run. Each step builds the neighbor index,
/// evaluates all velocities against that snapshot, integrates, then updates
/// statuses and removes agents that left.
class Simulation {
 public:
  explicit Simulation(const Scenario& scenario);
  /// Starts from a caller-built population (scripted runs). Histories are
  /// reset and seeded with the current leader positions.
  Simulation(const Scenario& scenario, Population population);

  void step();

  [[nodiscard]] double time() const { return t_; }
  [[nodiscard]] std::size_t step_index() const { return step_; }
  [[nodiscard]] const Scenario& scenario() const { return scenario_; }
  [[nodiscard]] const Geometry& geometry() const { return geometry_; }
  [[nodiscard]] const Population& population() const { return pop_; }
  [[nodiscard]] const std::vector<Transition>& events() const { return events_; }
  [[nodiscard]] const std::vector<VelocityTerms>& last_terms() const { return terms_; }
  [[nodiscard]] const std::vector<Vec2>& last_velocities() const { return velocities_; }
  [[nodiscard]] std::size_t n_removed() const { return n_removed_; }
  [[nodiscard]] std::size_t n_active() const { return pop_.agents.size() - n_removed_; }
  /// Largest speed of an active agent during the last step.
  [[nodiscard]] double max_speed() const { return max_speed_; }
  /// True while any active agent is in status 1, 2 or 3.
  [[nodiscard]] bool undecided_or_leaving() const;

  [[nodiscard]] DensitySample sample() const;
  [[nodiscard]] const std::array<Region, kRegionCount>& regions() const { return regions_; }

 private:
  Scenario scenario_;
  Geometry geometry_;
  std::array<Region, kRegionCount> regions_;
  Population pop_;
  std::mt19937_64 rng_;
  double t_{0.0};
  std::size_t step_{0};
  std::size_t history_every_;
  std::size_t n_removed_{0};
  double max_speed_{0.0};
  std::vector<Transition> events_;
  std::vector<VelocityTerms> terms_;
  std::vector<Vec2> velocities_;
  std::vector<Vec2> previous_;
};

struct RunResult {
  DensitySeries series;
  std::vector<Transition> events;
  Population final_state;
  Geometry geometry;
  std::size_t n_removed{0};
  std::size_t steps{0};
  double t_final{0.0};
  bool stopped_early{false};
  double wall_seconds{0.0};
};

struct RunHooks {
  /// Call on_frame every `frame_stride` steps (0 disables frames).
  std::size_t frame_stride{0};
  std::function<void(const Simulation&)> on_frame;
};

/// Runs from gate closure (t = 0) until T_end, or earlier once only
/// staying agents remain and the fastest one has stayed below stop_speed
/// for stop_hold seconds. Throws NumericError if the state goes non-finite.
RunResult run(const Scenario& scenario, const RunHooks& hooks = {});

}  // namespace gatesim
