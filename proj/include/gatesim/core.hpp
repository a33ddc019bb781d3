#pragma once

// Domain types shared by every part of the simulator: vectors, statuses,
// agents, groups, corridor geometry and model parameters.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gatesim/leader_history.hpp"

namespace gatesim {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend constexpr Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;

  [[nodiscard]] constexpr double norm2() const { return x * x + y * y; }
  [[nodiscard]] double norm() const { return std::hypot(x, y); }
  [[nodiscard]] bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

/// Group-level behavioral mode. Numeric values match the conventional
/// 1..4 numbering used in configs, logs and frame files.
enum class Status : std::uint8_t {
  Moving = 1,     // heading to the gate
  Doubt = 2,      // decision in progress
  GoingBack = 3,  // leaving the corridor
  Staying = 4,    // queuing
};

inline constexpr std::size_t kStatusCount = 4;

constexpr std::size_t status_index(Status s) { return static_cast<std::size_t>(s) - 1; }
constexpr int status_number(Status s) { return static_cast<int>(s); }
Status status_from_number(int n);

/// The only legal edges are 1->2, 2->3 and 2->4; 3 and 4 are absorbing.
constexpr bool is_allowed_transition(Status from, Status to) {
  return (from == Status::Moving && to == Status::Doubt) ||
         (from == Status::Doubt && (to == Status::GoingBack || to == Status::Staying));
}

using AgentId = std::uint32_t;
using GroupId = std::uint32_t;

struct Agent {
  AgentId id{0};
  Vec2 position;
  GroupId group{0};
  bool is_leader{false};
  bool active{true};
};

struct Group {
  GroupId id{0};
  std::vector<AgentId> members;
  AgentId leader{0};
  Status status{Status::Moving};
  std::optional<double> doubt_entered_at;
  /// Horizontal track of the leader, used by the stall detector.
  LeaderHistory history;
  bool closed{false};
};

struct Geometry {
  double length{130.0};  // L
  double height{10.0};   // H
  double x_min{0.0};     // open left edge of the domain, <= 0
  bool gate_closed{true};
};

/// Stranger-repulsion gains indexed [receiver status][exerter status].
using InteractionMatrix = std::array<std::array<double, kStatusCount>, kStatusCount>;

InteractionMatrix make_crq_matrix();

inline double stranger_gain(const InteractionMatrix& m, Status receiver, Status exerter) {
  return m[status_index(receiver)][status_index(exerter)];
}

struct ModelParams {
  double dt{0.01};
  double delta_t{7.0};         // stall window; +inf disables the stall rule
  double delta_ell_bar{1.5};   // minimal forward progress over the window
  double doubt_duration{10.0};  // D
  double p_go_back{25.0};      // percent of groups that leave after doubting
  std::array<Vec2, kStatusCount> desired_velocity{
      Vec2{1.0, 0.0}, Vec2{0.0, 0.0}, Vec2{-1.2, 0.0}, Vec2{0.5, 0.0}};
  double c_r{1.0};  // in-group repulsion (calibrated, not from paper)
  double c_a{0.05};  // attraction to leader (calibrated, not from paper)
  InteractionMatrix c_R{make_crq_matrix()};
  double c_o{0.5};     // wall repulsion gain
  double d_min{0.2};   // proximity cap
  double d_wall{0.5};  // wall cutoff
};

struct Cip {
  double x_pos{0.0};
  double activation_time{0.0};
  friend constexpr bool operator==(const Cip&, const Cip&) = default;
  friend constexpr auto operator<=>(const Cip&, const Cip&) = default;
};

/// Thrown for malformed or inconsistent scenario input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when the state stops being finite.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gatesim
