#include <doctest.h>

#include <cmath>

#include "gatesim/core.hpp"
#include "gatesim/scenario.hpp"

using namespace gatesim;

TEST_CASE("interaction matrix is receiver-row, exerter-column") {
  const auto m = make_crq_matrix();
  CHECK(stranger_gain(m, Status::Staying, Status::Staying) == 4.5);
  CHECK(stranger_gain(m, Status::Moving, Status::GoingBack) == 1.0);
  CHECK(stranger_gain(m, Status::GoingBack, Status::Moving) == 0.75);
  CHECK(stranger_gain(m, Status::Staying, Status::Moving) == 2.0);
  CHECK(stranger_gain(m, Status::Moving, Status::Doubt) == 2.5);

  const InteractionMatrix expected{{{2.0, 2.5, 1.0, 2.5},
                                    {2.0, 2.0, 2.0, 2.0},
                                    {0.75, 0.75, 0.75, 0.75},
                                    {2.0, 2.0, 0.75, 4.5}}};
  CHECK(m == expected);
  // Going-back agents are pushed equally by everyone.
  for (double c : m[2]) CHECK(c == 0.75);
}

TEST_CASE("default scenario carries the fixed and reference parameters") {
  const Scenario s = default_scenario();
  CHECK(s.params.dt == 0.01);
  CHECK(s.params.delta_ell_bar == 1.5);
  CHECK(s.geometry.length == 130.0);
  CHECK(s.region_side == 10.0);
  CHECK(s.params.desired_velocity[0] == Vec2{1.0, 0.0});
  CHECK(s.params.desired_velocity[1] == Vec2{0.0, 0.0});
  CHECK(s.params.desired_velocity[2] == Vec2{-1.2, 0.0});
  CHECK(s.params.desired_velocity[3] == Vec2{0.5, 0.0});
  CHECK(s.n_agents == 1200);
  CHECK(s.params.delta_t == 7.0);
  CHECK(s.params.p_go_back == 25.0);
  CHECK(s.params.doubt_duration == 10.0);
  CHECK(s.geometry.height == 10.0);
  CHECK(s.initial_density == 0.8);
  CHECK(s.group_size_min == 2);
  CHECK(s.group_size_max == 6);
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("status graph allows exactly 1->2, 2->3, 2->4") {
  int allowed = 0;
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      if (is_allowed_transition(status_from_number(a), status_from_number(b))) ++allowed;
    }
  }
  CHECK(allowed == 3);
  CHECK(is_allowed_transition(Status::Moving, Status::Doubt));
  CHECK(is_allowed_transition(Status::Doubt, Status::GoingBack));
  CHECK(is_allowed_transition(Status::Doubt, Status::Staying));
  CHECK_FALSE(is_allowed_transition(Status::Moving, Status::Staying));
  CHECK_FALSE(is_allowed_transition(Status::Staying, Status::GoingBack));
  CHECK_THROWS_AS(status_from_number(0), ConfigError);
  CHECK_THROWS_AS(status_from_number(5), ConfigError);
}

TEST_CASE("placement block and staging edge") {
  Scenario s = default_scenario();
  s.n_agents = 400;
  CHECK(initial_block_width(s) == doctest::Approx(50.0));
  CHECK(resolve_geometry(s).x_min == doctest::Approx(-5.0));

  s.n_agents = 1200;
  CHECK(initial_block_width(s) == doctest::Approx(150.0));
  CHECK(resolve_geometry(s).x_min == doctest::Approx(-35.0));
}

TEST_CASE("validate rejects broken scenarios") {
  auto broken = [](auto mutate) {
    Scenario s = default_scenario();
    mutate(s);
    return s;
  };
  CHECK_THROWS_AS(validate(broken([](Scenario& s) { s.n_agents = 1; })), ConfigError);
  CHECK_THROWS_AS(validate(broken([](Scenario& s) { s.params.dt = 0.0; })), ConfigError);
  CHECK_THROWS_AS(validate(broken([](Scenario& s) { s.params.p_go_back = 101.0; })), ConfigError);
  CHECK_THROWS_AS(validate(broken([](Scenario& s) { s.params.c_R[1][2] = -1.0; })), ConfigError);
  CHECK_THROWS_AS(validate(broken([](Scenario& s) { s.geometry.height = 0.0; })), ConfigError);
  CHECK_THROWS_AS(validate(broken([](Scenario& s) { s.cips = {{131.0, 0.0}}; })), ConfigError);
  CHECK_THROWS_AS(validate(broken([](Scenario& s) { s.cips = {{50.0, -1.0}}; })), ConfigError);
  CHECK_NOTHROW(validate(broken([](Scenario& s) { s.params.delta_t = INFINITY; })));
}
