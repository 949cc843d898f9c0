#include "evtcfar/window_engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "evtcfar/tail_stats.hpp"

namespace evtcfar {

void WindowConfig::validate() const {
  if (length < 3 || length % 2 == 0) {
    throw std::invalid_argument("window length must be odd and at least 3, got " +
                                std::to_string(length));
  }
  if (tail_count(length, p_u) == 0) {
    throw std::invalid_argument("window length " + std::to_string(length) +
                                " holds no tail samples at p_u=" + std::to_string(p_u));
  }
}

std::size_t window_tail_count(std::size_t size, double p_u) {
  return std::max<std::size_t>(1, tail_count(size, p_u));
}

WindowTail::WindowTail(double p_u) : p_u_(p_u), upper_(&pool_), lower_(&pool_) {
  if (!(p_u > 0.0 && p_u < 1.0)) {
    throw std::invalid_argument("WindowTail: p_u must lie in (0, 1)");
  }
}

void WindowTail::insert(double value) {
  if (!lower_.empty() && value <= *lower_.rbegin()) {
    lower_.insert(value);
  } else {
    upper_.insert(value);
  }
  rebalance();
}

void WindowTail::remove(double value) {
  erase_one(value);
  rebalance();
}

void WindowTail::update(double remove_value, double insert_value) {
  erase_one(remove_value);
  if (!lower_.empty() && insert_value <= *lower_.rbegin()) {
    lower_.insert(insert_value);
  } else {
    upper_.insert(insert_value);
  }
  rebalance();
}

void WindowTail::erase_one(double value) {
  if (auto it = lower_.find(value); it != lower_.end()) {
    lower_.erase(it);
  } else if (auto jt = upper_.find(value); jt != upper_.end()) {
    upper_.erase(jt);
  } else {
    throw std::invalid_argument("WindowTail: value to remove is not in the window");
  }
  cached_sum_.reset();
}

void WindowTail::rebalance() {
  cached_sum_.reset();
  const std::size_t total = size();
  const std::size_t k = total < 2 ? std::min<std::size_t>(total, 1)
                                  : std::min(window_tail_count(total, p_u_), total - 1);
  while (upper_.size() > k) {
    auto node = upper_.extract(upper_.begin());
    lower_.insert(std::move(node));
  }
  while (upper_.size() < k && !lower_.empty()) {
    auto node = lower_.extract(std::prev(lower_.end()));
    upper_.insert(std::move(node));
  }
}

double WindowTail::threshold() const {
  if (lower_.empty()) throw std::logic_error("WindowTail: window too small to query");
  return *lower_.rbegin();
}

double WindowTail::excess_sum() const {
  if (!cached_sum_) {
    scratch_.assign(upper_.begin(), upper_.end());
    cached_sum_ = evtcfar::excess_sum(scratch_, threshold());
  }
  return *cached_sum_;
}

WindowTailStats WindowTail::stats(std::size_t center_index) const {
  return {center_index, threshold(), count(), excess_sum()};
}

WindowRange window_range(std::size_t i, std::size_t size, const WindowConfig& config) {
  const std::size_t half = (config.length - 1) / 2;
  if (config.boundary == Boundary::shrink) {
    return {i >= half ? i - half : 0, std::min(size, i + half + 1)};
  }
  const std::size_t first = std::min(i >= half ? i - half : 0, size - config.length);
  return {first, first + config.length};
}

std::vector<WindowTailStats> window_stats_all(std::span<const double> scores,
                                              const WindowConfig& config) {
  config.validate();
  if (scores.size() < config.length) {
    throw std::invalid_argument("sequence of " + std::to_string(scores.size()) +
                                " samples is shorter than the window length " +
                                std::to_string(config.length));
  }
  auto value_at = [&](std::size_t j) {
    const double v = scores[j];
    return config.censor_at && v > *config.censor_at ? *config.censor_at : v;
  };

  WindowTail engine(config.p_u);
  std::size_t first = 0;
  std::size_t last = 0;
  std::vector<WindowTailStats> out;
  out.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const WindowRange target = window_range(i, scores.size(), config);
    if (target.first == first + 1 && target.last == last + 1) {
      engine.update(value_at(first), value_at(last));
      first = target.first;
      last = target.last;
    } else {
      while (last < target.last) engine.insert(value_at(last++));
      while (first < target.first) engine.remove(value_at(first++));
    }
    out.push_back(engine.stats(i));
  }
  return out;
}

}  // namespace evtcfar
