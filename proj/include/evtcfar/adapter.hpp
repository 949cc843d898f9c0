// Adaptive score normalization for one sequence.
//
// The oriented scores are first scanned for gross outliers with the KS test,
// the remaining sequence tail refines the trained prior, and every sample is
// then shifted by the tail threshold of its window plus the exponential-tail
// offset that leaves a false-alarm probability of p_f above zero.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evtcfar/sequence.hpp"
#include "evtcfar/tail_stats.hpp"
#include "evtcfar/window_engine.hpp"

namespace evtcfar {

struct AdaptConfig {
  double p_u = 0.05;
  double p_f = 0.001;
  double w1 = 100.0;               // pseudo-sample weight of the sequence tail
  std::size_t window_length = 101;  // odd
  std::size_t max_anomalies = 12;   // n_a, candidates tried by the KS scan
  Orientation orientation = Orientation::anomaly_low;
  bool censor = true;       // clip window values above u' before extraction
  Boundary boundary = Boundary::clamp;
  bool good_high_output = false;   // emit -a so that normal samples score high
  bool keep_diagnostics = false;   // fill per-sample sigma and u

  void validate() const;
  WindowConfig window_config(std::optional<double> censor_at) const;
};

struct SequencePosterior {
  GammaParams params;
  double u_prime = 0.0;
  std::size_t i_hat = 1;
  double mean_excess = 0.0;
  std::vector<double> ks_distances;
};

struct AdaptedSequence {
  std::string seq_id;
  std::vector<double> adapted_scores;
  double u_prime = 0.0;
  double sigma_seq = 0.0;
  std::size_t i_hat = 1;
  std::vector<double> per_sample_sigma;  // only with keep_diagnostics
  std::vector<double> per_sample_u;      // only with keep_diagnostics
};

/// KS outlier scan plus the w1-weighted sequence update of `prior`.
/// `oriented` need not be sorted.
SequencePosterior sequence_posterior(std::span<const double> oriented, const GammaParams& prior,
                                     const AdaptConfig& config);

/// a = z - u - cfar_offset(sigma, p_u, p_f) for one sample.
double adapt_sample(double oriented_score, double window_u, double sigma, double p_u,
                    double p_f);

AdaptedSequence adapt_scores(std::string seq_id, std::span<const double> raw_scores,
                             const GammaParams& prior, const AdaptConfig& config);

AdaptedSequence adapt_sequence(const LabeledSequence& seq, const GammaParams& prior,
                               const AdaptConfig& config);

/// Result slot for corpus adaptation: exactly one of `adapted` / `error` set.
struct AdaptOutcome {
  std::string seq_id;
  std::optional<AdaptedSequence> adapted;
  std::string error;
};

/// Adapts every sequence on up to `threads` workers (0 = hardware
/// concurrency). Output order matches the input; a failing sequence does not
/// affect the others.
std::vector<AdaptOutcome> adapt_corpus(std::span<const LabeledSequence> corpus,
                                       const GammaParams& prior, const AdaptConfig& config,
                                       unsigned threads = 0);

}  // namespace evtcfar
