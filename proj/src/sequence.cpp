#include "evtcfar/sequence.hpp"

#include <stdexcept>

namespace evtcfar {

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::clear:
      return "clear";
    case Condition::track_switch:
      return "switch";
    case Condition::ballast:
      return "ballast";
    case Condition::lubricator:
      return "lubricator";
  }
  return "clear";
}

std::optional<Condition> parse_condition(std::string_view text) {
  if (text == "clear") return Condition::clear;
  if (text == "switch") return Condition::track_switch;
  if (text == "ballast") return Condition::ballast;
  if (text == "lubricator") return Condition::lubricator;
  return std::nullopt;
}

std::string_view to_string(Orientation o) {
  return o == Orientation::anomaly_low ? "anomaly_low" : "anomaly_high";
}

std::optional<Orientation> parse_orientation(std::string_view text) {
  if (text == "anomaly_low") return Orientation::anomaly_low;
  if (text == "anomaly_high") return Orientation::anomaly_high;
  return std::nullopt;
}

void LabeledSequence::validate() const {
  const std::size_t n = scores.size();
  if (labels.size() != n || conditions.size() != n || frames.size() != n) {
    throw std::invalid_argument("sequence '" + seq_id + "': column lengths differ");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] > 1) {
      throw std::invalid_argument("sequence '" + seq_id + "': label must be 0 or 1");
    }
    if (i > 0 && frames[i] <= frames[i - 1]) {
      throw std::invalid_argument("sequence '" + seq_id +
                                  "': frame_index must be strictly increasing");
    }
  }
}

std::vector<double> orient(std::span<const double> scores, Orientation orientation) {
  std::vector<double> out(scores.begin(), scores.end());
  if (orientation == Orientation::anomaly_low) {
    for (double& v : out) v = -v;
  }
  return out;
}

}  // namespace evtcfar
