#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "gatesim/core.hpp"

namespace gatesim {

inline constexpr std::size_t kRegionCount = 4;

/// Square probe of side `side` centred at `center`, clipped vertically to
/// the corridor [0, H].
struct Region {
  Vec2 center;
  double side{10.0};
};

/// Four equally spaced probes at y = H / 2 spanning the corridor: region 1
/// touches x = 0 and region 4 touches the gate. Numbered left to right.
std::array<Region, kRegionCount> default_regions(double length, double height, double side);

/// Probes at the given x centres (one per region), y = H / 2.
std::array<Region, kRegionCount> regions_at(std::span<const double> x_centers, double height,
                                            double side);

double region_area(const Region& r, double height);

/// Lower edges are inclusive and upper edges exclusive, except where an
/// edge coincides with the wall at y = H (agents clamped onto it count).
bool region_contains(const Region& r, double height, Vec2 p);

/// Active agents inside the region per square metre.
double density(std::span<const Agent> agents, const Region& region, double height);

struct DensitySample {
  double t{0.0};
  std::array<double, kRegionCount> rho{};
  std::size_t n_active{0};
  std::array<std::size_t, kStatusCount> n_status{};
};

struct DensitySeries {
  std::vector<DensitySample> samples;

  [[nodiscard]] std::vector<double> region(std::size_t i) const;
  [[nodiscard]] std::vector<double> times() const;
};

/// Centred moving average; windows are truncated at the series ends.
std::vector<double> smooth(std::span<const double> values, int width);

struct RegionStats {
  double peak{0.0};    // max of the smoothed series
  double t_peak{0.0};  // first time the smoothed maximum is reached
  double final_value{0.0};  // last raw sample
};

/// Throws std::invalid_argument on an empty series.
std::array<RegionStats, kRegionCount> series_stats(const DensitySeries& series, int smoothing_width);

/// Largest smoothed density over all regions and times.
double global_peak(const DensitySeries& series, int smoothing_width);

/// Sum over regions of the standard deviation of the first differences of
/// the smoothed density.
double fluctuation_score(const DensitySeries& series, int smoothing_width);

}  // namespace gatesim
