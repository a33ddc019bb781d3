#pragma once

#include <optional>
#include <span>

#include "gatesim/core.hpp"

namespace gatesim {

/// Per-agent velocity split into its contributions. Leaders never carry
/// group-mate terms (repel_in and attract stay zero).
struct VelocityTerms {
  Vec2 desired;
  Vec2 repel_in;
  Vec2 repel_out;
  Vec2 attract;
  Vec2 obstacle;

  [[nodiscard]] Vec2 total() const { return desired + repel_in + repel_out + attract + obstacle; }
};

/// First-neighbor query results for one agent.
struct Neighbors {
  std::optional<AgentId> inside;   // nearest group mate
  std::optional<AgentId> outside;  // nearest stranger
};

Vec2 desired_velocity(Status status, const ModelParams& params);

/// -gain * (other - self) / max(|other - self|^2, d_min^2). Coincident
/// points are treated as separated by (d_min, 0), so the result is never NaN
/// and its magnitude never exceeds gain / d_min.
Vec2 repulsion(Vec2 self, Vec2 other, double gain, double d_min);

Vec2 attraction_to_leader(Vec2 self, Vec2 leader, double c_a);

/// Inverse-distance push away from the side walls (and the gate when it is
/// closed), active within d_wall of a wall. The left edge is open.
Vec2 wall_repulsion(Vec2 x, const Geometry& geometry, double c_o, double d_wall, double d_min);

/// Velocity of agent k. Statuses are read from the groups; agents and groups
/// are indexed by id.
VelocityTerms agent_velocity(const Agent& k, const Neighbors& neighbors,
                             std::span<const Agent> agents, std::span<const Group> groups,
                             const ModelParams& params, const Geometry& geometry);

/// Explicit Euler update of every active agent followed by clamping to
/// [x_min, L] x [0, H].
void euler_step(std::span<Agent> agents, std::span<const Vec2> velocities, double dt,
                const Geometry& geometry);

}  // namespace gatesim
