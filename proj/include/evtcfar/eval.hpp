// ROC construction, operating-point readout and false-alarm dispersion.
// Scores are anomaly-high throughout: a sample alarms when score > threshold.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "evtcfar/sequence.hpp"

namespace evtcfar {

struct RocPoint {
  double threshold = 0.0;
  double pfa = 0.0;
  double pd = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // thresholds strictly descending
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
};

/// One point per distinct score (threshold = that score), followed by a
/// terminal point at -infinity where everything alarms.
/// Throws std::invalid_argument unless both classes are present.
RocCurve roc(std::span<const double> scores, std::span<const std::uint8_t> labels);

struct OperatingPoint {
  double pd = 0.0;
  double achieved_pfa = 0.0;
  double threshold = 0.0;
};

/// Lowest threshold whose empirical PFA does not exceed `target_pfa`.
OperatingPoint pd_at_pfa(const RocCurve& curve, double target_pfa);

struct FarDispersion {
  std::vector<double> per_block_far;
  double variance = 0.0;  // population variance across blocks
};

/// Splits positions into consecutive blocks of `block_len` samples and reports
/// the alarm rate (score > 0) among the normal samples of each block. Blocks
/// without normal samples are skipped; a trailing partial block is dropped
/// unless it is the only one.
FarDispersion far_dispersion(std::span<const double> scores,
                             std::span<const std::uint8_t> labels, std::size_t block_len);

/// Evaluation subsets by inspection condition.
enum class Subset { clear, clear_switch, all };

std::string_view to_string(Subset s);
std::optional<Subset> parse_subset(std::string_view text);
bool in_subset(Condition c, Subset s);

/// Scores and labels of the samples that belong to a subset, in order.
struct LabeledScores {
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;
};

LabeledScores filter_subset(std::span<const double> scores,
                            std::span<const std::uint8_t> labels,
                            std::span<const Condition> conditions, Subset subset);

}  // namespace evtcfar
