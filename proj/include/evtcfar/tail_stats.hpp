// Exponential tail model, tail extraction, Kolmogorov-Smirnov fit and the
// Gamma conjugate update that together form the numerical kernel of the
// adaptive thresholder.
//
// Everything in this header is a pure function of its arguments.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace evtcfar {

/// Exponential excess distribution G(y) = 1 - exp(-y / sigma).
class ExpTail {
 public:
  /// Throws std::domain_error unless sigma is positive and finite.
  explicit ExpTail(double sigma);

  double sigma() const noexcept { return sigma_; }
  double rate() const noexcept { return 1.0 / sigma_; }

  /// CDF at y >= 0. Throws std::domain_error on negative y.
  double cdf(double y) const;

 private:
  double sigma_;
};

/// Gamma(alpha, beta) over the tail rate. Used as prior and posterior.
struct GammaParams {
  double alpha = 1.0;
  double beta = 0.0;

  /// Throws std::domain_error if alpha < 1, beta < 0 or either is not finite.
  void validate() const;

  friend bool operator==(const GammaParams&, const GammaParams&) = default;
};

/// Threshold u plus the excesses of the k values ranked above it.
struct TailSample {
  double u = 0.0;
  std::vector<double> excesses;  // ascending
  std::size_t n = 0;
  double s = 0.0;
};

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double exp_tail_cdf(double y, const ExpTail& tail);

/// Excess above u at which the exponential tail survival equals p_f, given
/// that u itself is exceeded with probability p_u: sigma * ln(p_u / p_f).
double cfar_offset(double sigma, double p_u, double p_f);

/// floor(m * p_u), tolerant of the representation error in p_u so that,
/// e.g., 100 * 0.29 yields 29.
std::size_t tail_count(std::size_t m, double p_u);

/// Upper tail with k = tail_count(size, p_u). Throws std::invalid_argument
/// when the input is empty or k == 0.
TailSample find_tail(std::span<const double> scores, double p_u);

/// Upper tail with an explicit count: u is the (k+1)-th largest value.
/// Requires 1 <= k < scores.size().
TailSample find_tail_k(std::span<const double> scores, std::size_t k);

/// Sum of (v - u) over `upper_ascending` in the given order, compensated.
/// Shared by find_tail and the window engine so both produce the same bits.
double excess_sum(std::span<const double> upper_ascending, double u);

/// Two-sided KS distance between the empirical CDF of `excesses` and the
/// exponential tail, evaluated exactly on both edges of every step.
double ks_statistic(std::span<const double> excesses, const ExpTail& tail);

struct ScanResult {
  std::size_t i_hat = 1;  // 1-based, number of rejected samples is i_hat - 1
  double u_prime = 0.0;   // sorted_desc[i_hat]
  std::vector<double> distances;  // D_1 .. D_{n_a}
};

/// Iterative outlier rejection over a descending-sorted sequence: for each
/// candidate i in 1..n_a the window sorted_desc[i .. i+k] (1-based) is fit
/// against `reference` and the candidate with the smallest KS distance wins
/// (first one on ties).
ScanResult ks_anomaly_scan(std::span<const double> sorted_desc, std::size_t k,
                           std::size_t n_a, const ExpTail& reference);

/// (alpha + n, beta + s). `n` may be fractional for pseudo-sample updates.
GammaParams gamma_posterior(const GammaParams& prior, double n, double s);

/// Tail scale estimate beta / (alpha - 1). Requires alpha > 1 and beta > 0.
double map_scale(const GammaParams& params);

}  // namespace evtcfar
