#pragma once

#include <cstdint>
#include <vector>

#include "gatesim/core.hpp"

namespace gatesim {

/// Everything a run needs. Defaults reproduce the reference case: N = 1200,
/// delta_t = 7 s, p = 25, D = 10 s, staying velocity (0.5, 0), H = 10 m.
struct Scenario {
  Geometry geometry;  // x_min is derived, see resolve_geometry()
  ModelParams params;
  double region_side{10.0};  // R
  std::vector<double> region_x;  // probe centres; empty means the default layout
  std::size_t n_agents{1200};
  std::vector<Cip> cips;
  bool cip_sweep{false};  // also inform leaders already past a CIP when it activates
  std::uint64_t seed{1};
  double t_end{600.0};

  // Initial placement.
  double initial_density{0.8};  // p/m^2
  double front_gap{10.0};       // distance from the crowd front to the gate
  double staging_margin{5.0};   // extra room left of the crowd's tail
  int group_size_min{2};
  int group_size_max{6};
  double member_spread{1.0};  // radius of the disc members are drawn in

  // Numerics and bookkeeping.
  double cell_size{2.0};
  double history_stride{0.1};
  double sample_interval{1.0};
  int smoothing_width{5};

  // Early stop once only staying agents remain and everyone is still.
  double stop_speed{0.05};
  double stop_hold{10.0};
};

Scenario default_scenario();

/// Throws ConfigError if any invariant is violated.
void validate(const Scenario& s);

/// Width of the block the initial crowd occupies at its target density.
double initial_block_width(const Scenario& s);

/// Geometry with x_min filled in from the placement rule.
Geometry resolve_geometry(const Scenario& s);

/// Number of integration steps between two multiples of `interval`.
std::size_t steps_per(double interval, double dt);

}  // namespace gatesim
