#pragma once

// Shared helpers for the test suites: population builders and exhaustive
// oracles that do not touch the grid index.

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "gatesim/engine.hpp"

namespace gatesim::testing {

struct Placement {
  Vec2 position;
  GroupId group;
  bool active{true};
};

/// Agents with ids in order; the first agent seen for each group leads it.
inline Population make_population(const std::vector<Placement>& placements,
                                  Status status = Status::Moving) {
  Population pop;
  GroupId max_group = 0;
  for (const auto& p : placements) max_group = std::max(max_group, p.group);
  pop.groups.resize(placements.empty() ? 0 : max_group + 1);
  for (GroupId g = 0; g < pop.groups.size(); ++g) {
    pop.groups[g].id = g;
    pop.groups[g].status = status;
  }
  for (const auto& p : placements) {
    Agent a;
    a.id = static_cast<AgentId>(pop.agents.size());
    a.position = p.position;
    a.group = p.group;
    a.active = p.active;
    Group& g = pop.groups[p.group];
    a.is_leader = g.members.empty();
    if (a.is_leader) g.leader = a.id;
    g.members.push_back(a.id);
    pop.agents.push_back(a);
  }
  return pop;
}

/// Random agents in [0, w] x [0, h]; group sizes 1..6, some agents inactive.
inline Population random_population(std::mt19937_64& rng, std::size_t n, double w, double h,
                                    double inactive_fraction = 0.1) {
  std::uniform_real_distribution<double> ux(0.0, w), uy(0.0, h), unit(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 6);
  std::vector<Placement> placements;
  GroupId g = 0;
  while (placements.size() < n) {
    const int s = size(rng);
    for (int m = 0; m < s && placements.size() < n; ++m)
      placements.push_back({{ux(rng), uy(rng)}, g, unit(rng) >= inactive_fraction});
    ++g;
  }
  return make_population(placements);
}

enum class Which { Inside, Outside };

/// Exhaustive O(N) scan with (distance, id) lexicographic tie-breaking.
inline std::optional<AgentId> brute_nearest(const std::vector<Agent>& agents, AgentId k,
                                            Which which) {
  std::optional<AgentId> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (const Agent& a : agents) {
    if (!a.active || a.id == k) continue;
    const bool same = a.group == agents[k].group;
    if ((which == Which::Inside) != same) continue;
    const double d2 = (a.position - agents[k].position).norm2();
    if (d2 < best_d2 || (d2 == best_d2 && a.id < *best)) {
      best_d2 = d2;
      best = a.id;
    }
  }
  return best;
}

/// Minimal scenario around a scripted population.
inline Scenario scripted_scenario(std::size_t n_agents) {
  Scenario s = default_scenario();
  s.n_agents = std::max<std::size_t>(n_agents, 2);
  s.staging_margin = 5.0;
  return s;
}

}  // namespace gatesim::testing
