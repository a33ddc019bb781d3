#include "gatesim/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gatesim {
namespace {

struct Bounds {
  double x0, x1, y0, y1;
};

Bounds bounds_of(const Region& r, double height) {
  const double h = r.side / 2.0;
  return {r.center.x - h, r.center.x + h, std::max(0.0, r.center.y - h),
          std::min(height, r.center.y + h)};
}

}  // namespace

std::array<Region, kRegionCount> default_regions(double length, double height, double side) {
  std::array<Region, kRegionCount> out;
  const double pitch = (length - side) / static_cast<double>(kRegionCount - 1);
  for (std::size_t i = 0; i < kRegionCount; ++i)
    out[i] = {{side / 2.0 + static_cast<double>(i) * pitch, height / 2.0}, side};
  return out;
}

std::array<Region, kRegionCount> regions_at(std::span<const double> x_centers, double height,
                                            double side) {
  if (x_centers.size() != kRegionCount) throw std::invalid_argument("need one centre per region");
  std::array<Region, kRegionCount> out;
  for (std::size_t i = 0; i < kRegionCount; ++i) out[i] = {{x_centers[i], height / 2.0}, side};
  return out;
}

double region_area(const Region& r, double height) {
  const Bounds b = bounds_of(r, height);
  return (b.x1 - b.x0) * std::max(0.0, b.y1 - b.y0);
}

bool region_contains(const Region& r, double height, Vec2 p) {
  const Bounds b = bounds_of(r, height);
  const bool below_top = b.y1 >= height ? p.y <= b.y1 : p.y < b.y1;
  return p.x >= b.x0 && p.x < b.x1 && p.y >= b.y0 && below_top;
}

double density(std::span<const Agent> agents, const Region& region, double height) {
  const double area = region_area(region, height);
  if (area <= 0.0) return 0.0;
  std::size_t count = 0;
  for (const Agent& a : agents)
    if (a.active && region_contains(region, height, a.position)) ++count;
  return static_cast<double>(count) / area;
}

std::vector<double> DensitySeries::region(std::size_t i) const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.rho.at(i));
  return out;
}

std::vector<double> DensitySeries::times() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.t);
  return out;
}

std::vector<double> smooth(std::span<const double> values, int width) {
  if (width < 1) throw std::invalid_argument("smoothing width must be >= 1");
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  const std::ptrdiff_t left = (width - 1) / 2;
  const std::ptrdiff_t right = width - 1 - left;
  std::vector<double> out(values.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - left);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + right);
    double sum = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) sum += values[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::array<RegionStats, kRegionCount> series_stats(const DensitySeries& series,
                                                   int smoothing_width) {
  if (series.samples.empty()) throw std::invalid_argument("series_stats on an empty series");
  std::array<RegionStats, kRegionCount> out;
  for (std::size_t r = 0; r < kRegionCount; ++r) {
    const auto raw = series.region(r);
    const auto sm = smooth(raw, smoothing_width);
    const auto it = std::max_element(sm.begin(), sm.end());
    const auto idx = static_cast<std::size_t>(it - sm.begin());
    out[r] = {*it, series.samples[idx].t, raw.back()};
  }
  return out;
}

double global_peak(const DensitySeries& series, int smoothing_width) {
  double best = 0.0;
  for (const auto& s : series_stats(series, smoothing_width)) best = std::max(best, s.peak);
  return best;
}

double fluctuation_score(const DensitySeries& series, int smoothing_width) {
  double total = 0.0;
  for (std::size_t r = 0; r < kRegionCount; ++r) {
    const auto raw = series.region(r);
    const auto sm = smooth(raw, smoothing_width);
    if (sm.size() < 2) continue;
    std::vector<double> diff(sm.size() - 1);
    for (std::size_t i = 0; i + 1 < sm.size(); ++i) diff[i] = sm[i + 1] - sm[i];
    double mean = 0.0;
    for (double d : diff) mean += d;
    mean /= static_cast<double>(diff.size());
    double var = 0.0;
    for (double d : diff) var += (d - mean) * (d - mean);
    total += std::sqrt(var / static_cast<double>(diff.size()));
  }
  return total;
}

}  // namespace gatesim
