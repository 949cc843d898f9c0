#include "evtcfar/adapter.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace evtcfar {

void AdaptConfig::validate() const {
  if (!(p_f > 0.0) || !(p_f < p_u) || !(p_u < 1.0)) {
    throw std::invalid_argument("adapt: requires 0 < p_f < p_u < 1");
  }
  if (!(w1 >= 0.0) || !std::isfinite(w1)) {
    throw std::invalid_argument("adapt: w1 must be a non-negative finite weight");
  }
  if (max_anomalies == 0) throw std::invalid_argument("adapt: n_a must be at least 1");
  window_config(std::nullopt).validate();
}

WindowConfig AdaptConfig::window_config(std::optional<double> censor_at) const {
  WindowConfig wc;
  wc.length = window_length;
  wc.p_u = p_u;
  wc.censor_at = censor_at;
  wc.boundary = boundary;
  return wc;
}

SequencePosterior sequence_posterior(std::span<const double> oriented, const GammaParams& prior,
                                     const AdaptConfig& config) {
  prior.validate();
  const std::size_t k = tail_count(oriented.size(), config.p_u);
  if (k == 0) {
    throw std::invalid_argument("sequence of " + std::to_string(oriented.size()) +
                                " samples has no tail at p_u=" + std::to_string(config.p_u));
  }
  std::vector<double> sorted(oriented.begin(), oriented.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  const ExpTail reference(map_scale(prior));
  ScanResult scan = ks_anomaly_scan(sorted, k, config.max_anomalies, reference);

  // Tail of k + 1 values starting at the accepted rank; its last entry is the
  // threshold and contributes a zero excess.
  const auto first = sorted.begin() + static_cast<std::ptrdiff_t>(scan.i_hat - 1);
  std::vector<double> tail(first, first + static_cast<std::ptrdiff_t>(k + 1));
  const double u = tail.back();
  std::reverse(tail.begin(), tail.end());
  const double mean = excess_sum(tail, u) / static_cast<double>(tail.size());

  if (mean == 0.0 && prior.beta == 0.0) {
    throw std::domain_error("sequence tail has zero spread and the prior carries no scale");
  }

  SequencePosterior out;
  out.params = {prior.alpha + config.w1, prior.beta + config.w1 * mean};
  out.u_prime = scan.u_prime;
  out.i_hat = scan.i_hat;
  out.mean_excess = mean;
  out.ks_distances = std::move(scan.distances);
  return out;
}

double adapt_sample(double oriented_score, double window_u, double sigma, double p_u,
                    double p_f) {
  return oriented_score - window_u - cfar_offset(sigma, p_u, p_f);
}

AdaptedSequence adapt_scores(std::string seq_id, std::span<const double> raw_scores,
                             const GammaParams& prior, const AdaptConfig& config) {
  config.validate();
  if (raw_scores.size() < config.window_length) {
    throw std::invalid_argument("sequence of " + std::to_string(raw_scores.size()) +
                                " samples is shorter than the window length " +
                                std::to_string(config.window_length));
  }
  const std::vector<double> z = orient(raw_scores, config.orientation);
  const SequencePosterior seq = sequence_posterior(z, prior, config);

  AdaptedSequence out;
  out.seq_id = std::move(seq_id);
  out.u_prime = seq.u_prime;
  out.i_hat = seq.i_hat;
  out.sigma_seq = map_scale(seq.params);

  const std::vector<WindowTailStats> windows = window_stats_all(
      z, config.window_config(config.censor ? std::optional(seq.u_prime) : std::nullopt));

  // Same expression as cfar_offset, hoisted out of the loop.
  const double log_ratio = std::log(config.p_u / config.p_f);
  out.adapted_scores.resize(z.size());
  if (config.keep_diagnostics) {
    out.per_sample_sigma.resize(z.size());
    out.per_sample_u.resize(z.size());
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    const WindowTailStats& w = windows[i];
    const double alpha = seq.params.alpha + static_cast<double>(w.n);
    const double beta = seq.params.beta + w.s;
    const double sigma = beta / (alpha - 1.0);
    const double a = z[i] - w.u - sigma * log_ratio;
    out.adapted_scores[i] = config.good_high_output ? -a : a;
    if (config.keep_diagnostics) {
      out.per_sample_sigma[i] = sigma;
      out.per_sample_u[i] = w.u;
    }
  }
  return out;
}

AdaptedSequence adapt_sequence(const LabeledSequence& seq, const GammaParams& prior,
                               const AdaptConfig& config) {
  return adapt_scores(seq.seq_id, seq.scores, prior, config);
}

std::vector<AdaptOutcome> adapt_corpus(std::span<const LabeledSequence> corpus,
                                       const GammaParams& prior, const AdaptConfig& config,
                                       unsigned threads) {
  std::vector<AdaptOutcome> outcomes(corpus.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size(); i = next++) {
      AdaptOutcome& slot = outcomes[i];
      slot.seq_id = corpus[i].seq_id;
      try {
        slot.adapted = adapt_sequence(corpus[i], prior, config);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, corpus.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return outcomes;
}

}  // namespace evtcfar
