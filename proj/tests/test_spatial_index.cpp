#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "gatesim/spatial_index.hpp"
#include "support.hpp"

using namespace gatesim;
using namespace gatesim::testing;

TEST_CASE("empty and singleton indexes") {
  const Population none;
  const NeighborIndex empty(none.agents, 2.0);
  CHECK(empty.size() == 0);
  CHECK_FALSE(empty.nearest_outside_group(0));
  CHECK_FALSE(empty.nearest_inside_group(0));

  const auto one = make_population({{{3.0, 4.0}, 0}});
  const NeighborIndex single(one.agents, 2.0);
  CHECK(single.size() == 1);
  CHECK_FALSE(single.nearest_outside_group(0));
  CHECK_FALSE(single.nearest_inside_group(0));
}

TEST_CASE("stranger beats a closer-looking group mate") {
  const auto pop = make_population({{{0.0, 0.0}, 0}, {{1.0, 0.0}, 0}, {{0.5, 0.5}, 1}});
  const NeighborIndex index(pop.agents, 2.0);
  CHECK(index.nearest_outside_group(0) == AgentId{2});
  CHECK(index.nearest_inside_group(1) == AgentId{0});
}

TEST_CASE("no stranger when everyone shares the group") {
  const auto pop = make_population({{{0.0, 0.0}, 0}, {{1.0, 0.0}, 0}, {{5.0, 3.0}, 0}});
  const NeighborIndex index(pop.agents, 2.0);
  CHECK_FALSE(index.nearest_outside_group(0));
}

TEST_CASE("group-mate query") {
  SUBCASE("forced mate at 3 m") {
    const auto pop = make_population({{{0.0, 0.0}, 0}, {{3.0, 0.0}, 0}, {{0.1, 0.0}, 1}});
    const NeighborIndex index(pop.agents, 2.0);
    CHECK(index.nearest_inside_group(1) == AgentId{0});
  }
  SUBCASE("removed mate leaves nobody") {
    const auto pop = make_population({{{0.0, 0.0}, 0, false}, {{3.0, 0.0}, 0}, {{0.1, 0.0}, 1}});
    const NeighborIndex index(pop.agents, 2.0);
    CHECK_FALSE(index.nearest_inside_group(1));
    CHECK(index.size() == 2);
  }
}

TEST_CASE("ties go to the lowest id") {
  const auto pop = make_population(
      {{{0.0, 0.0}, 0}, {{1.0, 0.0}, 1}, {{-1.0, 0.0}, 2}, {{0.0, 1.0}, 0}, {{0.0, -1.0}, 0}});
  const NeighborIndex index(pop.agents, 0.7);
  CHECK(index.nearest_outside_group(0) == AgentId{1});
  CHECK(index.nearest_inside_group(0) == AgentId{3});
}

TEST_CASE("inactive query target is a caller bug") {
  const auto pop = make_population({{{0.0, 0.0}, 0}, {{1.0, 0.0}, 1, false}, {{2.0, 0.0}, 2}});
  const NeighborIndex index(pop.agents, 2.0);
  CHECK_THROWS_AS((void)index.nearest_outside_group(1), std::logic_error);
  CHECK_THROWS_AS((void)index.nearest_inside_group(7), std::logic_error);
  // The inactive agent is never returned.
  CHECK(index.nearest_outside_group(0) == AgentId{2});
}

TEST_CASE("counts are conserved over a large crowd") {
  std::mt19937_64 rng(11);
  auto pop = random_population(rng, 1200, 150.0, 10.0, 0.0);
  const NeighborIndex index(pop.agents, 2.0);
  CHECK(index.size() == 1200);
}

TEST_CASE("grid queries match an exhaustive scan") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> n_dist(2, 500);
  std::uniform_real_distribution<double> cell_dist(0.3, 6.0);
  std::uniform_real_distribution<double> width_dist(1.0, 200.0);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = trial == 0 ? 50 : n_dist(rng);
    auto pop = random_population(rng, n, width_dist(rng), 10.0);
    if (trial % 10 == 0) {
      // Coincident points and exact duplicates stress the tie rule.
      for (std::size_t i = 1; i < pop.agents.size(); i += 3)
        pop.agents[i].position = pop.agents[i - 1].position;
    }
    const NeighborIndex index(pop.agents, cell_dist(rng));
    for (const Agent& a : pop.agents) {
      if (!a.active) continue;
      if (index.nearest_outside_group(a.id) != brute_nearest(pop.agents, a.id, Which::Outside))
        ++mismatches;
      if (index.nearest_inside_group(a.id) != brute_nearest(pop.agents, a.id, Which::Inside))
        ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("results do not depend on insertion order") {
  std::mt19937_64 rng(5);
  auto pop = random_population(rng, 300, 60.0, 10.0);
  // Relabel agents with a permutation, keeping positions and groups.
  std::vector<AgentId> perm(pop.agents.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Agent> shuffled(pop.agents.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    shuffled[perm[i]] = pop.agents[i];
    shuffled[perm[i]].id = perm[i];
  }
  const NeighborIndex a(pop.agents, 2.0);
  const NeighborIndex b(shuffled, 2.0);
  std::size_t diff = 0;
  for (const Agent& agent : pop.agents) {
    if (!agent.active) continue;
    const auto oa = a.nearest_outside_group(agent.id);
    const auto ob = b.nearest_outside_group(perm[agent.id]);
    // Same neighbor position unless two candidates tie exactly.
    if (oa.has_value() != ob.has_value()) ++diff;
    else if (oa && !(pop.agents[*oa].position == shuffled[*ob].position)) ++diff;
  }
  CHECK(diff == 0);

  const NeighborIndex again(pop.agents, 2.0);
  for (const Agent& agent : pop.agents) {
    if (!agent.active) continue;
    CHECK(a.nearest_outside_group(agent.id) == again.nearest_outside_group(agent.id));
  }
}
