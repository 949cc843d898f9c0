#include "evtcfar/tail_stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace evtcfar {

ExpTail::ExpTail(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("exponential tail scale must be positive and finite, got " +
                            std::to_string(sigma));
  }
}

double ExpTail::cdf(double y) const {
  if (!(y >= 0.0)) {
    throw std::domain_error("exponential tail CDF is defined for y >= 0");
  }
  return -std::expm1(-y / sigma_);
}

void GammaParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 1.0 || beta < 0.0) {
    throw std::domain_error("invalid Gamma parameters (alpha=" + std::to_string(alpha) +
                            ", beta=" + std::to_string(beta) + ")");
  }
}

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double exp_tail_cdf(double y, const ExpTail& tail) { return tail.cdf(y); }

double cfar_offset(double sigma, double p_u, double p_f) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::domain_error("cfar_offset: sigma must be positive and finite");
  }
  if (!(p_f > 0.0) || !(p_f < p_u) || !(p_u < 1.0)) {
    throw std::domain_error("cfar_offset: requires 0 < p_f < p_u < 1");
  }
  return sigma * std::log(p_u / p_f);
}

std::size_t tail_count(std::size_t m, double p_u) {
  if (!(p_u > 0.0 && p_u < 1.0)) {
    throw std::domain_error("tail probability must lie in (0, 1)");
  }
  const double exact = static_cast<double>(m) * p_u;
  return static_cast<std::size_t>(std::floor(exact + 1e-9 * std::max(1.0, exact)));
}

double excess_sum(std::span<const double> upper_ascending, double u) {
  CompensatedSum acc;
  for (double v : upper_ascending) acc.add(v - u);
  return acc.value();
}

TailSample find_tail(std::span<const double> scores, double p_u) {
  if (scores.empty()) throw std::invalid_argument("find_tail: empty score list");
  const std::size_t k = tail_count(scores.size(), p_u);
  if (k == 0) {
    throw std::invalid_argument("find_tail: " + std::to_string(scores.size()) +
                                " samples are too few for tail probability " +
                                std::to_string(p_u));
  }
  return find_tail_k(scores, k);
}

TailSample find_tail_k(std::span<const double> scores, std::size_t k) {
  if (k == 0 || k >= scores.size()) {
    throw std::invalid_argument("find_tail_k: need 1 <= k < number of scores");
  }
  std::vector<double> work(scores.begin(), scores.end());
  // After this, work[0..k) are the k largest and work[k] is the (k+1)-th.
  std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k), work.end(),
                   std::greater<>());
  TailSample tail;
  tail.u = work[k];
  std::vector<double> upper(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(upper.begin(), upper.end());
  tail.s = excess_sum(upper, tail.u);
  tail.excesses.reserve(k);
  for (double v : upper) tail.excesses.push_back(v - tail.u);
  tail.n = k;
  return tail;
}

double ks_statistic(std::span<const double> excesses, const ExpTail& tail) {
  if (excesses.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::vector<double> x(excesses.begin(), excesses.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double g = tail.cdf(x[i]);
    const double above = static_cast<double>(i + 1) / n - g;
    const double below = g - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

ScanResult ks_anomaly_scan(std::span<const double> sorted_desc, std::size_t k,
                           std::size_t n_a, const ExpTail& reference) {
  if (k == 0 || n_a == 0) {
    throw std::invalid_argument("ks_anomaly_scan: k and n_a must be at least 1");
  }
  if (sorted_desc.size() < n_a + k + 1) {
    throw std::invalid_argument("ks_anomaly_scan: need at least n_a + k + 1 = " +
                                std::to_string(n_a + k + 1) + " samples, got " +
                                std::to_string(sorted_desc.size()));
  }
  if (!std::is_sorted(sorted_desc.begin(), sorted_desc.end(), std::greater<>())) {
    throw std::invalid_argument("ks_anomaly_scan: input must be sorted descending");
  }

  ScanResult result;
  result.distances.reserve(n_a);
  std::vector<double> tail(k + 1);
  double best = 0.0;
  for (std::size_t i = 0; i < n_a; ++i) {
    const double u = sorted_desc[i + k];
    for (std::size_t j = 0; j <= k; ++j) tail[j] = sorted_desc[i + j] - u;
    const double d = ks_statistic(tail, reference);
    result.distances.push_back(d);
    if (i == 0 || d < best) {
      best = d;
      result.i_hat = i + 1;
    }
  }
  result.u_prime = sorted_desc[result.i_hat - 1];
  return result;
}

GammaParams gamma_posterior(const GammaParams& prior, double n, double s) {
  prior.validate();
  if (!(n >= 0.0) || !(s >= 0.0)) {
    throw std::domain_error("gamma_posterior: counts and sums must be non-negative");
  }
  return {prior.alpha + n, prior.beta + s};
}

double map_scale(const GammaParams& params) {
  if (!(params.alpha > 1.0) || !(params.beta > 0.0) || !std::isfinite(params.beta)) {
    throw std::domain_error("map_scale: requires alpha > 1 and beta > 0");
  }
  return params.beta / (params.alpha - 1.0);
}

}  // namespace evtcfar
