#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace evtcfar {

/// Inspection condition of a sample. Subsets for evaluation are built from it.
enum class Condition : std::uint8_t { clear, track_switch, ballast, lubricator };

std::string_view to_string(Condition c);
std::optional<Condition> parse_condition(std::string_view text);

/// Which tail of the raw scores holds the anomalies.
enum class Orientation { anomaly_low, anomaly_high };

std::string_view to_string(Orientation o);
std::optional<Orientation> parse_orientation(std::string_view text);

/// Scores of one pass, one entry per frame.
struct LabeledSequence {
  std::string seq_id;
  std::vector<std::int64_t> frames;
  std::vector<double> scores;
  std::vector<std::uint8_t> labels;  // 0 normal, 1 anomaly
  std::vector<Condition> conditions;

  std::size_t size() const noexcept { return scores.size(); }

  /// Throws std::invalid_argument on mismatched column lengths, non-binary
  /// labels or non-increasing frame indices.
  void validate() const;
};

/// anomaly_low negates, anomaly_high copies. Downstream code always sees
/// anomalies in the upper tail.
std::vector<double> orient(std::span<const double> scores, Orientation orientation);

}  // namespace evtcfar
