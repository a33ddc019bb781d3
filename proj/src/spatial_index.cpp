#include "gatesim/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace gatesim {
namespace {

struct Best {
  double d2 = std::numeric_limits<double>::infinity();
  AgentId id = std::numeric_limits<AgentId>::max();

  void offer(double cand_d2, AgentId cand) {
    if (cand_d2 < d2 || (cand_d2 == d2 && cand < id)) {
      d2 = cand_d2;
      id = cand;
    }
  }
  [[nodiscard]] std::optional<AgentId> result() const {
    if (id == std::numeric_limits<AgentId>::max()) return std::nullopt;
    return id;
  }
};

}  // namespace

NeighborIndex::NeighborIndex(std::span<const Agent> agents, double cell_size)
    : agents_(agents), cell_size_(cell_size) {
  if (!(cell_size > 0.0)) throw std::invalid_argument("cell size must be positive");

  double xmin = std::numeric_limits<double>::infinity();
  double ymin = xmin;
  double xmax = -xmin;
  double ymax = -xmin;
  std::size_t n_active = 0;
  GroupId max_group = 0;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const Agent& a = agents[i];
    if (a.id != i) throw std::invalid_argument("agent ids must match their index");
    if (!a.active) continue;
    ++n_active;
    xmin = std::min(xmin, a.position.x);
    xmax = std::max(xmax, a.position.x);
    ymin = std::min(ymin, a.position.y);
    ymax = std::max(ymax, a.position.y);
    max_group = std::max(max_group, a.group);
  }
  if (n_active == 0) return;

  x0_ = xmin;
  y0_ = ymin;
  nx_ = static_cast<int>(std::floor((xmax - xmin) / cell_size_)) + 1;
  ny_ = static_cast<int>(std::floor((ymax - ymin) / cell_size_)) + 1;

  auto cell_of = [this](const Vec2& p) {
    const int cx = std::clamp(static_cast<int>((p.x - x0_) / cell_size_), 0, nx_ - 1);
    const int cy = std::clamp(static_cast<int>((p.y - y0_) / cell_size_), 0, ny_ - 1);
    return static_cast<std::size_t>(cy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(cx);
  };

  // Counting sort by cell; iterating in id order keeps each bucket sorted.
  const std::size_t n_cells = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  cell_start_.assign(n_cells + 1, 0);
  group_start_.assign(static_cast<std::size_t>(max_group) + 2, 0);
  for (const Agent& a : agents) {
    if (!a.active) continue;
    ++cell_start_[cell_of(a.position) + 1];
    ++group_start_[a.group + 1];
  }
  for (std::size_t c = 0; c < n_cells; ++c) cell_start_[c + 1] += cell_start_[c];
  for (std::size_t g = 0; g + 1 < group_start_.size(); ++g) group_start_[g + 1] += group_start_[g];

  entries_.resize(n_active);
  group_entries_.resize(n_active);
  std::vector<std::uint32_t> cell_fill(cell_start_.begin(), cell_start_.end() - 1);
  std::vector<std::uint32_t> group_fill(group_start_.begin(), group_start_.end() - 1);
  for (const Agent& a : agents) {
    if (!a.active) continue;
    const Entry e{a.position.x, a.position.y, a.id, a.group};
    entries_[cell_fill[cell_of(a.position)]++] = e;
    group_entries_[group_fill[a.group]++] = e;
  }
}

const Agent& NeighborIndex::checked(AgentId k) const {
  if (k >= agents_.size() || !agents_[k].active)
    throw std::logic_error(fmt::format("neighbor query for inactive or unknown agent {}", k));
  return agents_[k];
}

std::optional<AgentId> NeighborIndex::nearest_outside_group(AgentId k) const {
  if (entries_.empty()) return std::nullopt;
  const Agent& self = checked(k);
  const double px = self.position.x;
  const double py = self.position.y;
  const int cx = std::clamp(static_cast<int>((px - x0_) / cell_size_), 0, nx_ - 1);
  const int cy = std::clamp(static_cast<int>((py - y0_) / cell_size_), 0, ny_ - 1);

  Best best;
  auto scan_cell = [&](int ix, int iy) {
    if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return;
    const std::size_t c = static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
                          static_cast<std::size_t>(ix);
    for (std::uint32_t i = cell_start_[c]; i < cell_start_[c + 1]; ++i) {
      const Entry& e = entries_[i];
      if (e.group == self.group) continue;
      const double dx = e.x - px;
      const double dy = e.y - py;
      best.offer(dx * dx + dy * dy, e.id);
    }
  };

  const int max_ring = std::max({cx, nx_ - 1 - cx, cy, ny_ - 1 - cy});
  scan_cell(cx, cy);
  for (int r = 1; r <= max_ring; ++r) {
    // Every cell of ring r lies beyond one side of the (2r-1)^2 block around
    // the home cell; sides with no grid cells left contribute nothing.
    constexpr double kNone = std::numeric_limits<double>::infinity();
    const double left = cx - r >= 0 ? px - (x0_ + (cx - r + 1) * cell_size_) : kNone;
    const double right = cx + r < nx_ ? x0_ + (cx + r) * cell_size_ - px : kNone;
    const double bottom = cy - r >= 0 ? py - (y0_ + (cy - r + 1) * cell_size_) : kNone;
    const double top = cy + r < ny_ ? y0_ + (cy + r) * cell_size_ - py : kNone;
    const double bound = std::max(0.0, std::min({left, right, bottom, top}));
    if (bound * bound > best.d2) break;

    for (int ix = cx - r; ix <= cx + r; ++ix) {
      scan_cell(ix, cy - r);
      scan_cell(ix, cy + r);
    }
    for (int iy = cy - r + 1; iy <= cy + r - 1; ++iy) {
      scan_cell(cx - r, iy);
      scan_cell(cx + r, iy);
    }
  }
  return best.result();
}

std::optional<AgentId> NeighborIndex::nearest_inside_group(AgentId k) const {
  if (entries_.empty()) return std::nullopt;
  const Agent& self = checked(k);
  Best best;
  for (std::uint32_t i = group_start_[self.group]; i < group_start_[self.group + 1]; ++i) {
    const Entry& e = group_entries_[i];
    if (e.id == k) continue;
    const double dx = e.x - self.position.x;
    const double dy = e.y - self.position.y;
    best.offer(dx * dx + dy * dy, e.id);
  }
  return best.result();
}

}  // namespace gatesim
