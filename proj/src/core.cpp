#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gatesim/core.hpp"
#include "gatesim/leader_history.hpp"
#include "gatesim/scenario.hpp"

namespace gatesim {

Status status_from_number(int n) {
  if (n < 1 || n > 4) throw ConfigError(fmt::format("status must be in 1..4, got {}", n));
  return static_cast<Status>(n);
}

InteractionMatrix make_crq_matrix() {
  return {{
      {2.0, 2.5, 1.0, 2.5},
      {2.0, 2.0, 2.0, 2.0},
      {0.75, 0.75, 0.75, 0.75},
      {2.0, 2.0, 0.75, 4.5},
  }};
}

// ---------------------------------------------------------------------------
// LeaderHistory

LeaderHistory::LeaderHistory(std::size_t capacity, double stride)
    : buffer_(std::max<std::size_t>(capacity, 1)), stride_(stride) {}

std::size_t LeaderHistory::capacity_for(double window, double stride) {
  if (!std::isfinite(window)) return 1;
  return static_cast<std::size_t>(std::ceil(window / stride)) + 2;
}

void LeaderHistory::push(double t, double x) {
  const std::size_t cap = buffer_.size();
  if (size_ < cap) {
    buffer_[(head_ + size_) % cap] = {t, x};
    ++size_;
  } else {
    buffer_[head_] = {t, x};
    head_ = (head_ + 1) % cap;
  }
}

const LeaderHistory::Sample& LeaderHistory::at(std::size_t i) const {
  return buffer_[(head_ + i) % buffer_.size()];
}

std::optional<LeaderHistory::Sample> LeaderHistory::nearest(double t) const {
  if (size_ == 0) return std::nullopt;
  // Samples are evenly spaced, so the candidate index is computable.
  const double rel = (t - oldest().t) / stride_;
  const auto last = static_cast<double>(size_ - 1);
  const auto guess = static_cast<std::size_t>(std::clamp(std::floor(rel), 0.0, last));
  std::size_t best = guess;
  for (std::size_t i = guess == 0 ? 0 : guess - 1; i <= std::min(guess + 1, size_ - 1); ++i) {
    if (std::abs(at(i).t - t) < std::abs(at(best).t - t)) best = i;
  }
  return at(best);
}

// ---------------------------------------------------------------------------
// Scenario

Scenario default_scenario() { return Scenario{}; }

double initial_block_width(const Scenario& s) {
  return static_cast<double>(s.n_agents) / (s.initial_density * s.geometry.height);
}

Geometry resolve_geometry(const Scenario& s) {
  Geometry g = s.geometry;
  const double front = g.length - s.front_gap;
  g.x_min = std::min(0.0, front - initial_block_width(s)) - s.staging_margin;
  return g;
}

std::size_t steps_per(double interval, double dt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(interval / dt)));
}

void validate(const Scenario& s) {
  auto require = [](bool ok, std::string_view what) {
    if (!ok) throw ConfigError(std::string(what));
  };
  const auto& g = s.geometry;
  const auto& p = s.params;
  require(g.length > 0.0 && std::isfinite(g.length), "L must be positive");
  require(g.height > 0.0 && std::isfinite(g.height), "H must be positive");
  require(s.region_side > 0.0, "R must be positive");
  require(s.n_agents >= 2, "N must be at least 2");
  require(p.dt > 0.0 && std::isfinite(p.dt), "dt must be positive");
  require(p.delta_t > 0.0, "delta_t must be positive (use .inf to disable the stall rule)");
  require(p.delta_ell_bar > 0.0 && std::isfinite(p.delta_ell_bar), "delta_ell_bar must be positive");
  require(p.doubt_duration >= 0.0 && std::isfinite(p.doubt_duration), "D must be non-negative");
  require(p.p_go_back >= 0.0 && p.p_go_back <= 100.0, "p must be in [0, 100]");
  for (const auto& v : p.desired_velocity) require(v.finite(), "desired velocities must be finite");
  require(p.c_r >= 0.0 && std::isfinite(p.c_r), "C_r must be >= 0");
  require(p.c_a >= 0.0 && std::isfinite(p.c_a), "C_a must be >= 0");
  require(p.c_o >= 0.0 && std::isfinite(p.c_o), "C_o must be >= 0");
  for (const auto& row : p.c_R)
    for (double c : row) require(c >= 0.0 && std::isfinite(c), "C_R entries must be >= 0");
  require(p.d_min > 0.0 && std::isfinite(p.d_min), "d_min must be positive");
  require(p.d_wall >= 0.0 && std::isfinite(p.d_wall), "d_wall must be >= 0");
  for (const auto& c : s.cips) {
    require(c.x_pos >= 0.0 && c.x_pos <= g.length, "CIP position must lie in [0, L]");
    require(c.activation_time >= 0.0 && std::isfinite(c.activation_time),
            "CIP activation time must be >= 0");
  }
  require(s.region_x.empty() || s.region_x.size() == 4, "region_x needs exactly 4 centres");
  for (double x : s.region_x) require(std::isfinite(x), "region centres must be finite");
  require(s.t_end > 0.0 && std::isfinite(s.t_end), "T_end must be positive");
  require(s.initial_density > 0.0, "initial_density must be positive");
  require(s.front_gap >= 0.0 && s.front_gap < g.length, "front_gap must be in [0, L)");
  require(s.staging_margin >= 0.0, "staging_margin must be >= 0");
  require(s.group_size_min >= 2 && s.group_size_max >= s.group_size_min,
          "group sizes must satisfy 2 <= min <= max");
  require(s.member_spread >= 0.0, "member_spread must be >= 0");
  require(s.cell_size > 0.0, "cell_size must be positive");
  require(s.history_stride >= p.dt, "history_stride must be >= dt");
  require(s.sample_interval >= p.dt, "sample_interval must be >= dt");
  require(s.smoothing_width >= 1, "smoothing_width must be >= 1");
  require(s.stop_speed >= 0.0 && s.stop_hold > 0.0, "stop_speed >= 0 and stop_hold > 0 required");
}

}  // namespace gatesim
