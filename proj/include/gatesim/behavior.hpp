#pragma once

#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "gatesim/core.hpp"
#include "gatesim/leader_history.hpp"

namespace gatesim {

/// True iff t > delta_t and the leader advanced at most delta_ell_bar
/// since t - delta_t. The past position is the buffered sample nearest to
/// t - delta_t; a buffer that does not reach back that far (within one
/// stride) counts as not stalled.
bool check_stall(const LeaderHistory& history, double t, double x_now, double delta_t,
                 double delta_ell_bar);

/// Whether a status-1 leader that moved from prev_x to new_x during the
/// step (t_prev, t] is informed by one of the control points. A point
/// informs by being crossed while active; with `sweep` it also informs,
/// at its activation step, every leader already at or beyond it.
bool cip_triggered(double prev_x, double new_x, Status status, double t_prev, double t,
                   std::span<const Cip> cips, bool sweep);

enum class TransitionCause { Stall, Cip, Split };

std::string_view cause_name(TransitionCause c);

struct Transition {
  double t{0.0};
  GroupId group{0};
  Status from{Status::Moving};
  Status to{Status::Moving};
  TransitionCause cause{TransitionCause::Stall};
};

struct StatusUpdateContext {
  double t_prev{0.0};
  double t{0.0};
  std::span<const Vec2> previous_positions;  // indexed by agent id
  std::span<const Cip> cips;
  bool cip_sweep{false};
};

/// One pass of the group state machine, in group-id order. The doubt-phase
/// split draws one uniform number per resolving group from `rng`.
std::vector<Transition> update_statuses(std::span<Group> groups, std::span<const Agent> agents,
                                        const ModelParams& params, const StatusUpdateContext& ctx,
                                        std::mt19937_64& rng);

/// Appends the current x of every live group's leader to its history.
void record_leader_positions(std::span<Group> groups, std::span<const Agent> agents, double t);

/// Deactivates going-back agents at or left of x_min and closes groups that
/// have no active member left. Returns the ids removed by this call.
std::vector<AgentId> remove_exited(std::span<Agent> agents, std::span<Group> groups,
                                   const Geometry& geometry);

}  // namespace gatesim
