#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gatesim/core.hpp"

namespace gatesim {

/// Uniform grid over the bounding box of the active agents, answering the
/// two first-neighbor queries of the velocity law. Build once per step,
/// then query read-only (queries are safe to run concurrently).
///
/// `agents[i].id` must equal i. The index keeps a view of `agents`, which
/// must outlive it and stay unmodified while queries run.
class NeighborIndex {
 public:
  NeighborIndex(std::span<const Agent> agents, double cell_size);

  /// Number of indexed (active) agents.
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] std::size_t cell_count() const { return cell_start_.empty() ? 0 : cell_start_.size() - 1; }

  /// Nearest active agent with a different group; ties go to the lowest id.
  /// Throws std::logic_error if k is not an active agent.
  [[nodiscard]] std::optional<AgentId> nearest_outside_group(AgentId k) const;

  /// Nearest active group mate of k (k itself excluded); ties go to the
  /// lowest id.
  [[nodiscard]] std::optional<AgentId> nearest_inside_group(AgentId k) const;

 private:
  struct Entry {
    double x;
    double y;
    AgentId id;
    GroupId group;
  };

  [[nodiscard]] const Agent& checked(AgentId k) const;

  std::span<const Agent> agents_;
  double cell_size_;
  double x0_{0.0};
  double y0_{0.0};
  int nx_{0};
  int ny_{0};
  std::vector<std::uint32_t> cell_start_;  // CSR offsets into entries_
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> group_start_;  // CSR offsets into group_entries_
  std::vector<Entry> group_entries_;
};

}  // namespace gatesim
