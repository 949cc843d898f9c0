// Brute-force reference implementations used only by the tests. They share no
// code paths with the library beyond the public types.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace evtcfar::oracle {

/// KS distance by evaluating |F_n - G| on both sides of every sample, with
/// F_n obtained by counting rather than by sorted rank.
inline double ks_distance(const std::vector<double>& x, double sigma) {
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (double xi : x) {
    double at = 0.0;
    double below = 0.0;
    for (double xj : x) {
      if (xj <= xi) at += 1.0;
      if (xj < xi) below += 1.0;
    }
    const double g = 1.0 - std::exp(-xi / sigma);
    d = std::max({d, std::abs(at / n - g), std::abs(below / n - g)});
  }
  return d;
}

struct NaiveTail {
  double u = 0.0;
  std::size_t n = 0;
  long double s = 0.0L;
};

/// Full sort of one window, top-k by rank.
inline NaiveTail naive_tail(std::vector<double> window, std::size_t k) {
  std::sort(window.begin(), window.end(), std::greater<>());
  NaiveTail t;
  t.u = window[k];
  t.n = k;
  for (std::size_t j = 0; j < k; ++j) t.s += static_cast<long double>(window[j]) - window[k];
  return t;
}

struct RocCount {
  double threshold;
  double pfa;
  double pd;
};

/// Quadratic-time ROC: for every distinct score, count alarms directly.
inline std::vector<RocCount> roc_counts(const std::vector<double>& scores,
                                        const std::vector<std::uint8_t>& labels) {
  std::vector<double> thresholds = scores;
  std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(-std::numeric_limits<double>::infinity());
  double pos = 0;
  double neg = 0;
  for (auto l : labels) (l ? pos : neg) += 1;
  std::vector<RocCount> out;
  for (double t : thresholds) {
    double tp = 0;
    double fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] > t) (labels[i] ? tp : fp) += 1;
    }
    out.push_back({t, fp / neg, tp / pos});
  }
  return out;
}

inline std::vector<double> exponential_sample(std::mt19937_64& rng, std::size_t n,
                                              double sigma) {
  std::exponential_distribution<double> dist(1.0 / sigma);
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

}  // namespace evtcfar::oracle
