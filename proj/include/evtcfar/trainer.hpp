// Learns the Gamma prior over the tail scale from labeled training sequences.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "evtcfar/sequence.hpp"
#include "evtcfar/tail_stats.hpp"

namespace evtcfar {

struct TrainConfig {
  double p_u = 0.05;
  double w0 = 400.0;  // pseudo-sample weight of the prior
  Orientation orientation = Orientation::anomaly_low;
  std::vector<std::string> exclude;  // seq_ids left out (leave-one-out)
  bool exclude_non_clear = false;    // also drop switch/ballast/lubricator samples

  void validate() const;
};

struct TrainResult {
  GammaParams prior;
  std::size_t tail_count = 0;  // pooled n
  double excess_sum = 0.0;     // pooled s
  std::vector<std::string> skipped;  // sequences too short for one tail sample
};

/// Per sequence: keep normal samples, extract the p_u tail, pool (n, s).
/// Returns alpha0 = 1 + w0 and beta0 = w0 * s / n, so that
/// map_scale(prior) == s / n.
///
/// Throws std::invalid_argument naming the sequence if one has no normal
/// samples, and if the pooled tail is empty.
TrainResult train(std::span<const LabeledSequence> corpus, const TrainConfig& config);

}  // namespace evtcfar
