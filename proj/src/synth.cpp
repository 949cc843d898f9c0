#include "evtcfar/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace evtcfar {
namespace {

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

  double gumbel() { return -std::log(-std::log(uniform())); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

void SynthConfig::validate() const {
  if (!(drift_rate >= 0.0 && drift_rate < 1.0)) {
    throw std::invalid_argument("synth: drift_rate must lie in [0, 1)");
  }
  if (!(drift_noise >= 0.0)) throw std::invalid_argument("synth: drift_noise must be >= 0");
  if (!(base_scale > 0.0)) throw std::invalid_argument("synth: base_scale must be positive");
  if (!(anomaly_rate >= 0.0 && anomaly_rate <= 1.0)) {
    throw std::invalid_argument("synth: anomaly_rate must lie in [0, 1]");
  }
  if (!(anomaly_offset > 0.0)) throw std::invalid_argument("synth: anomaly_offset must be positive");
  if (pool_size == 0) throw std::invalid_argument("synth: pool_size must be at least 1");
}

LabeledSequence generate(const SynthConfig& config) {
  config.validate();
  Stream rng(config.seed);

  LabeledSequence seq;
  seq.seq_id = config.seq_id;
  seq.frames.resize(config.n);
  seq.scores.resize(config.n);
  seq.labels.resize(config.n);
  seq.conditions.assign(config.n, Condition::clear);

  double location = config.mean_level;
  for (std::size_t t = 0; t < config.n; ++t) {
    // Draw order per step is fixed: innovation, pool, anomaly indicator.
    const double innovation = rng.normal();
    const bool moves = config.segment_len == 0 || t % config.segment_len == 0;
    if (t > 0 && moves) {
      location += config.drift_rate * (config.mean_level - location) +
                  config.drift_noise * innovation;
    }
    double pooled = rng.gumbel();
    for (std::size_t j = 1; j < config.pool_size; ++j) pooled = std::max(pooled, rng.gumbel());
    const bool anomaly = rng.uniform() < config.anomaly_rate;

    seq.frames[t] = static_cast<std::int64_t>(t);
    seq.scores[t] = location - config.base_scale * pooled - (anomaly ? config.anomaly_offset : 0.0);
    seq.labels[t] = anomaly ? 1 : 0;
  }
  return seq;
}

}  // namespace evtcfar
