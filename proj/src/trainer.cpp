#include "evtcfar/trainer.hpp"

#include <algorithm>
#include <stdexcept>

namespace evtcfar {

void TrainConfig::validate() const {
  if (!(p_u > 0.0 && p_u < 1.0)) throw std::invalid_argument("p_u must lie in (0, 1)");
  if (!(w0 > 0.0)) throw std::invalid_argument("w0 must be positive");
}

TrainResult train(std::span<const LabeledSequence> corpus, const TrainConfig& config) {
  config.validate();
  if (corpus.empty()) throw std::invalid_argument("training corpus is empty");

  TrainResult result;
  CompensatedSum pooled;
  for (const LabeledSequence& seq : corpus) {
    if (std::find(config.exclude.begin(), config.exclude.end(), seq.seq_id) !=
        config.exclude.end()) {
      continue;
    }
    seq.validate();
    const std::vector<double> oriented = orient(seq.scores, config.orientation);
    std::vector<double> negatives;
    negatives.reserve(oriented.size());
    for (std::size_t i = 0; i < oriented.size(); ++i) {
      if (seq.labels[i] != 0) continue;
      if (config.exclude_non_clear && seq.conditions[i] != Condition::clear) continue;
      negatives.push_back(oriented[i]);
    }
    if (negatives.empty()) {
      throw std::invalid_argument("sequence '" + seq.seq_id + "' has no normal samples");
    }
    if (tail_count(negatives.size(), config.p_u) == 0) {
      result.skipped.push_back(seq.seq_id);
      continue;
    }
    const TailSample tail = find_tail(negatives, config.p_u);
    result.tail_count += tail.n;
    pooled.add(tail.s);
  }
  result.excess_sum = pooled.value();
  if (result.tail_count == 0) {
    throw std::invalid_argument("no tail samples in the training corpus");
  }
  const double n = static_cast<double>(result.tail_count);
  result.prior = {1.0 + config.w0, config.w0 * result.excess_sum / n};
  return result;
}

}  // namespace evtcfar
