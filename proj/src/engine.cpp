#include "gatesim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "gatesim/spatial_index.hpp"

namespace gatesim {

std::vector<int> partition_group_sizes(std::size_t n, int min_size, int max_size,
                                       std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size_dist(min_size, max_size);
  std::vector<int> sizes;
  std::size_t total = 0;
  while (total < n) {
    auto size = static_cast<std::size_t>(size_dist(rng));
    size = std::min(size, n - total);
    if (size == 1 && !sizes.empty()) {
      ++sizes.back();
    } else {
      sizes.push_back(static_cast<int>(size));
    }
    total += size;
  }
  return sizes;
}

void reset_histories(Population& population, const Scenario& scenario) {
  const auto cap = LeaderHistory::capacity_for(scenario.params.delta_t, scenario.history_stride);
  for (Group& g : population.groups) g.history = LeaderHistory(cap, scenario.history_stride);
}

Population init_population(const Scenario& scenario, std::mt19937_64& rng) {
  validate(scenario);
  const Geometry geo = resolve_geometry(scenario);
  const double front = geo.length - scenario.front_gap;
  const double back = front - initial_block_width(scenario);

  Population pop;
  const auto sizes = partition_group_sizes(scenario.n_agents, scenario.group_size_min,
                                           scenario.group_size_max, rng);
  std::uniform_real_distribution<double> cx(back, front);
  std::uniform_real_distribution<double> cy(0.0, geo.height);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  pop.agents.reserve(scenario.n_agents);
  for (std::size_t g = 0; g < sizes.size(); ++g) {
    Group group;
    group.id = static_cast<GroupId>(g);
    const Vec2 center{cx(rng), cy(rng)};
    for (int m = 0; m < sizes[g]; ++m) {
      const double r = scenario.member_spread * std::sqrt(unit(rng));
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      Agent a;
      a.id = static_cast<AgentId>(pop.agents.size());
      a.group = group.id;
      a.is_leader = m == 0;
      a.position = {std::clamp(center.x + r * std::cos(phi), geo.x_min, geo.length),
                    std::clamp(center.y + r * std::sin(phi), 0.0, geo.height)};
      group.members.push_back(a.id);
      pop.agents.push_back(a);
    }
    group.leader = group.members.front();
    pop.groups.push_back(std::move(group));
  }
  reset_histories(pop, scenario);
  record_leader_positions(pop.groups, pop.agents, 0.0);
  return pop;
}

// ---------------------------------------------------------------------------

Simulation::Simulation(const Scenario& scenario) : Simulation(scenario, Population{}) {}

Simulation::Simulation(const Scenario& scenario, Population population)
    : scenario_(scenario),
      geometry_(resolve_geometry(scenario)),
      regions_(scenario.region_x.empty()
                   ? default_regions(scenario.geometry.length, scenario.geometry.height,
                                     scenario.region_side)
                   : regions_at(scenario.region_x, scenario.geometry.height,
                                scenario.region_side)),
      rng_(scenario.seed),
      history_every_(steps_per(scenario.history_stride, scenario.params.dt)) {
  validate(scenario_);
  if (population.agents.empty()) {
    pop_ = init_population(scenario_, rng_);
  } else {
    pop_ = std::move(population);
    for (std::size_t i = 0; i < pop_.agents.size(); ++i)
      if (pop_.agents[i].id != i) throw ConfigError("agent ids must match their index");
    for (std::size_t g = 0; g < pop_.groups.size(); ++g)
      if (pop_.groups[g].id != g) throw ConfigError("group ids must match their index");
    reset_histories(pop_, scenario_);
    record_leader_positions(pop_.groups, pop_.agents, 0.0);
    for (const Agent& a : pop_.agents) n_removed_ += a.active ? 0 : 1;
  }
  const std::size_t n = pop_.agents.size();
  terms_.resize(n);
  velocities_.resize(n);
  previous_.resize(n);
}

void Simulation::step() {
  const auto& params = scenario_.params;
  const double t_prev = t_;

  // Read phase: every velocity sees the same snapshot.
  {
    const NeighborIndex index(pop_.agents, scenario_.cell_size);
    max_speed_ = 0.0;
    for (const Agent& a : pop_.agents) {
      if (!a.active) {
        terms_[a.id] = {};
        velocities_[a.id] = {};
        continue;
      }
      Neighbors nb;
      nb.outside = index.nearest_outside_group(a.id);
      if (!a.is_leader) nb.inside = index.nearest_inside_group(a.id);
      terms_[a.id] = agent_velocity(a, nb, pop_.agents, pop_.groups, params, geometry_);
      const Vec2 v = terms_[a.id].total();
      if (!v.finite())
        throw NumericError(fmt::format("non-finite velocity for agent {} at t={}", a.id, t_));
      velocities_[a.id] = v;
      max_speed_ = std::max(max_speed_, v.norm());
    }
  }

  // Write phase.
  for (const Agent& a : pop_.agents) previous_[a.id] = a.position;
  euler_step(pop_.agents, velocities_, params.dt, geometry_);
  ++step_;
  t_ = static_cast<double>(step_) * params.dt;

  if (step_ % history_every_ == 0) record_leader_positions(pop_.groups, pop_.agents, t_);
  const StatusUpdateContext ctx{t_prev, t_, previous_, scenario_.cips, scenario_.cip_sweep};
  const auto transitions = update_statuses(pop_.groups, pop_.agents, params, ctx, rng_);
  events_.insert(events_.end(), transitions.begin(), transitions.end());
  n_removed_ += remove_exited(pop_.agents, pop_.groups, geometry_).size();
}

bool Simulation::undecided_or_leaving() const {
  for (const Agent& a : pop_.agents)
    if (a.active && pop_.groups[a.group].status != Status::Staying) return true;
  return false;
}

DensitySample Simulation::sample() const {
  DensitySample s;
  s.t = t_;
  const double h = geometry_.height;
  std::array<std::size_t, kRegionCount> counts{};
  for (const Agent& a : pop_.agents) {
    if (!a.active) continue;
    ++s.n_active;
    ++s.n_status[status_index(pop_.groups[a.group].status)];
    for (std::size_t r = 0; r < kRegionCount; ++r)
      if (region_contains(regions_[r], h, a.position)) ++counts[r];
  }
  for (std::size_t r = 0; r < kRegionCount; ++r) {
    const double area = region_area(regions_[r], h);
    s.rho[r] = area > 0.0 ? static_cast<double>(counts[r]) / area : 0.0;
  }
  return s;
}

RunResult run(const Scenario& scenario, const RunHooks& hooks) {
  const auto started = std::chrono::steady_clock::now();
  Simulation sim(scenario);
  RunResult result;

  const double dt = scenario.params.dt;
  const std::size_t total_steps =
      static_cast<std::size_t>(std::llround(std::floor(scenario.t_end / dt + 1e-9)));
  const std::size_t sample_every = steps_per(scenario.sample_interval, dt);
  result.series.samples.push_back(sim.sample());

  double still_for = 0.0;
  while (sim.step_index() < total_steps) {
    sim.step();
    const std::size_t k = sim.step_index();
    if (hooks.frame_stride > 0 && hooks.on_frame && k % hooks.frame_stride == 0) hooks.on_frame(sim);
    const bool sampled = k % sample_every == 0;
    if (sampled) result.series.samples.push_back(sim.sample());

    if (!sim.undecided_or_leaving() && sim.max_speed() < scenario.stop_speed) {
      still_for += dt;
    } else {
      still_for = 0.0;
    }
    if (still_for >= scenario.stop_hold - 1e-9) {
      if (!sampled) result.series.samples.push_back(sim.sample());
      result.stopped_early = true;
      break;
    }
  }

  result.events = sim.events();
  result.final_state = sim.population();
  result.geometry = sim.geometry();
  result.n_removed = sim.n_removed();
  result.steps = sim.step_index();
  result.t_final = sim.time();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace gatesim
