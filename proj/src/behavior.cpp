#include "gatesim/behavior.hpp"

#include <cassert>
#include <cmath>
#include <limits>

namespace gatesim {
namespace {

// Slack for comparing times built from accumulated steps.
constexpr double kTimeEps = 1e-9;

}  // namespace

bool check_stall(const LeaderHistory& history, double t, double x_now, double delta_t,
                 double delta_ell_bar) {
  if (!(t > delta_t) || !std::isfinite(delta_t)) return false;
  const double target = t - delta_t;
  const auto past = history.nearest(target);
  if (!past || std::abs(past->t - target) > history.stride() + kTimeEps) return false;
  return x_now - past->x <= delta_ell_bar;
}

bool cip_triggered(double prev_x, double new_x, Status status, double t_prev, double t,
                   std::span<const Cip> cips, bool sweep) {
  if (status != Status::Moving) return false;
  // The first step also owns activations at exactly t = 0.
  const double window_start =
      t_prev <= kTimeEps ? -std::numeric_limits<double>::infinity() : t_prev;
  for (const Cip& c : cips) {
    if (c.activation_time > t + kTimeEps) continue;
    if (prev_x < c.x_pos && c.x_pos <= new_x) return true;
    const bool activates_now = c.activation_time > window_start + kTimeEps;
    if (sweep && activates_now && new_x >= c.x_pos) return true;
  }
  return false;
}

std::string_view cause_name(TransitionCause c) {
  switch (c) {
    case TransitionCause::Stall:
      return "stall";
    case TransitionCause::Cip:
      return "cip";
    case TransitionCause::Split:
      return "split";
  }
  return "?";
}

std::vector<Transition> update_statuses(std::span<Group> groups, std::span<const Agent> agents,
                                        const ModelParams& params, const StatusUpdateContext& ctx,
                                        std::mt19937_64& rng) {
  std::vector<Transition> out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Group& g : groups) {
    if (g.closed) continue;
    const Agent& leader = agents[g.leader];
    if (g.status == Status::Moving) {
      if (!leader.active) continue;
      const double x_now = leader.position.x;
      TransitionCause cause{};
      if (cip_triggered(ctx.previous_positions[g.leader].x, x_now, g.status, ctx.t_prev, ctx.t,
                        ctx.cips, ctx.cip_sweep)) {
        cause = TransitionCause::Cip;
      } else if (check_stall(g.history, ctx.t, x_now, params.delta_t, params.delta_ell_bar)) {
        cause = TransitionCause::Stall;
      } else {
        continue;
      }
      g.status = Status::Doubt;
      g.doubt_entered_at = ctx.t;
      out.push_back({ctx.t, g.id, Status::Moving, Status::Doubt, cause});
    } else if (g.status == Status::Doubt) {
      assert(g.doubt_entered_at);
      if (ctx.t - *g.doubt_entered_at < params.doubt_duration - kTimeEps) continue;
      const double u = unit(rng);
      const Status next = u < params.p_go_back / 100.0 ? Status::GoingBack : Status::Staying;
      g.status = next;
      out.push_back({ctx.t, g.id, Status::Doubt, next, TransitionCause::Split});
    }
  }
  return out;
}

void record_leader_positions(std::span<Group> groups, std::span<const Agent> agents, double t) {
  for (Group& g : groups) {
    if (g.closed || g.status != Status::Moving) continue;
    g.history.push(t, agents[g.leader].position.x);
  }
}

std::vector<AgentId> remove_exited(std::span<Agent> agents, std::span<Group> groups,
                                   const Geometry& geometry) {
  std::vector<AgentId> removed;
  for (Agent& a : agents) {
    if (!a.active || groups[a.group].status != Status::GoingBack) continue;
    if (a.position.x <= geometry.x_min) {
      a.active = false;
      removed.push_back(a.id);
    }
  }
  if (removed.empty()) return removed;
  for (Group& g : groups) {
    if (g.closed) continue;
    bool any_active = false;
    for (AgentId m : g.members) any_active = any_active || agents[m].active;
    if (!any_active) g.closed = true;
  }
  return removed;
}

}  // namespace gatesim
