#include "gatesim/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace gatesim {

Vec2 desired_velocity(Status status, const ModelParams& params) {
  return params.desired_velocity[status_index(status)];
}

Vec2 repulsion(Vec2 self, Vec2 other, double gain, double d_min) {
  Vec2 diff = other - self;
  double d2 = diff.norm2();
  if (d2 == 0.0) {
    diff = {d_min, 0.0};
    d2 = d_min * d_min;
  }
  return (-gain / std::max(d2, d_min * d_min)) * diff;
}

Vec2 attraction_to_leader(Vec2 self, Vec2 leader, double c_a) { return c_a * (leader - self); }

Vec2 wall_repulsion(Vec2 x, const Geometry& geometry, double c_o, double d_wall, double d_min) {
  Vec2 v;
  auto push = [&](double distance, Vec2 inward) {
    if (distance < d_wall) v += (c_o / std::max(distance, d_min)) * inward;
  };
  push(x.y, {0.0, 1.0});
  push(geometry.height - x.y, {0.0, -1.0});
  if (geometry.gate_closed) push(geometry.length - x.x, {-1.0, 0.0});
  return v;
}

VelocityTerms agent_velocity(const Agent& k, const Neighbors& neighbors,
                             std::span<const Agent> agents, std::span<const Group> groups,
                             const ModelParams& params, const Geometry& geometry) {
  const Group& own = groups[k.group];
  VelocityTerms v;
  v.desired = desired_velocity(own.status, params);
  v.obstacle = wall_repulsion(k.position, geometry, params.c_o, params.d_wall, params.d_min);

  if (neighbors.outside) {
    const Agent& stranger = agents[*neighbors.outside];
    const double gain = stranger_gain(params.c_R, own.status, groups[stranger.group].status);
    v.repel_out = repulsion(k.position, stranger.position, gain, params.d_min);
  }
  if (k.is_leader) return v;

  if (neighbors.inside) {
    v.repel_in = repulsion(k.position, agents[*neighbors.inside].position, params.c_r, params.d_min);
  }
  // An exited leader keeps its last position, which followers still track.
  v.attract = attraction_to_leader(k.position, agents[own.leader].position, params.c_a);
  return v;
}

void euler_step(std::span<Agent> agents, std::span<const Vec2> velocities, double dt,
                const Geometry& geometry) {
  if (velocities.size() != agents.size())
    throw std::invalid_argument("one velocity per agent is required");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    Agent& a = agents[i];
    if (!a.active) continue;
    a.position += dt * velocities[i];
    a.position.x = std::clamp(a.position.x, geometry.x_min, geometry.length);
    a.position.y = std::clamp(a.position.y, 0.0, geometry.height);
  }
}

}  // namespace gatesim
