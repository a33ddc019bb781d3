#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace gatesim {

/// Fixed-capacity ring buffer of (time, x) samples taken at a constant
/// stride. Old samples are overwritten once the buffer is full.
class LeaderHistory {
 public:
  struct Sample {
    double t{0.0};
    double x{0.0};
  };

  LeaderHistory() = default;
  LeaderHistory(std::size_t capacity, double stride);

  /// Capacity large enough to look back `window` seconds at `stride`.
  static std::size_t capacity_for(double window, double stride);

  /// Appends a sample; `t` must exceed the newest stored timestamp.
  void push(double t, double x);

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] std::size_t capacity() const { return buffer_.size(); }
  [[nodiscard]] bool empty() const { return size_ == 0; }
  [[nodiscard]] double stride() const { return stride_; }

  /// i = 0 is the oldest retained sample.
  [[nodiscard]] const Sample& at(std::size_t i) const;
  [[nodiscard]] const Sample& oldest() const { return at(0); }
  [[nodiscard]] const Sample& newest() const { return at(size_ - 1); }

  /// Sample whose timestamp is closest to `t` (earlier one on ties).
  [[nodiscard]] std::optional<Sample> nearest(double t) const;

 private:
  std::vector<Sample> buffer_;
  std::size_t head_{0};  // index of the oldest sample
  std::size_t size_{0};
  double stride_{0.1};
};

}  // namespace gatesim
