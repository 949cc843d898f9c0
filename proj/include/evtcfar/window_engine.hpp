// Sliding-window tail statistics.
//
// For every sample of a sequence, reports the threshold u (the (k+1)-th
// largest value of the window around it), the excess count k and the
// compensated excess sum. Results are bit-identical to running find_tail_k on
// each window separately.

#pragma once

#include <cstddef>
#include <memory_resource>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace evtcfar {

/// How windows are formed near the ends of a sequence.
enum class Boundary {
  clamp,   // reuse the first/last full window
  shrink,  // truncate the window at the sequence edge
};

struct WindowConfig {
  std::size_t length = 101;  // odd
  double p_u = 0.05;
  std::optional<double> censor_at;  // values above are clipped before extraction
  Boundary boundary = Boundary::clamp;

  /// Throws std::invalid_argument on an even length or a length too short to
  /// hold one tail sample.
  void validate() const;
};

struct WindowTailStats {
  std::size_t center_index = 0;
  double u = 0.0;
  std::size_t n = 0;
  double s = 0.0;
};

/// Number of tail samples for a window of `size` values. Full windows use
/// tail_count(size, p_u); truncated windows keep at least one.
std::size_t window_tail_count(std::size_t size, double p_u);

/// Order-statistics multiset split at rank k: `upper_` holds the k largest
/// values, `lower_` the rest. k follows window_tail_count(size(), p_u).
/// Single-threaded; one instance per sequence.
class WindowTail {
 public:
  explicit WindowTail(double p_u);

  WindowTail(const WindowTail&) = delete;
  WindowTail& operator=(const WindowTail&) = delete;

  void insert(double value);
  /// Throws std::invalid_argument if `value` is not in the window.
  void remove(double value);
  /// Remove then insert, rebalancing once.
  void update(double remove_value, double insert_value);

  std::size_t size() const noexcept { return upper_.size() + lower_.size(); }

  /// Queries need at least two values in the window.
  double threshold() const;
  std::size_t count() const noexcept { return upper_.size(); }
  double excess_sum() const;

  WindowTailStats stats(std::size_t center_index) const;

 private:
  void erase_one(double value);
  void rebalance();

  double p_u_;
  std::pmr::unsynchronized_pool_resource pool_;
  std::pmr::multiset<double> upper_;
  std::pmr::multiset<double> lower_;
  mutable std::optional<double> cached_sum_;
  mutable std::vector<double> scratch_;
};

/// Tail statistics for every index of `scores`. Throws std::invalid_argument
/// if the sequence is shorter than the window.
std::vector<WindowTailStats> window_stats_all(std::span<const double> scores,
                                              const WindowConfig& config);

/// Inclusive-exclusive index range [first, last) of the window used for
/// sample i of a sequence of length `size`.
struct WindowRange {
  std::size_t first = 0;
  std::size_t last = 0;
};
WindowRange window_range(std::size_t i, std::size_t size, const WindowConfig& config);

}  // namespace evtcfar
