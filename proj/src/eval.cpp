#include "evtcfar/eval.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace evtcfar {

RocCurve roc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("roc: scores and labels differ in length");
  }
  RocCurve curve;
  for (std::uint8_t l : labels) (l != 0 ? curve.n_pos : curve.n_neg)++;
  if (curve.n_pos == 0 || curve.n_neg == 0) {
    throw std::invalid_argument("roc: need at least one positive and one negative sample");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  const double pos = static_cast<double>(curve.n_pos);
  const double neg = static_cast<double>(curve.n_neg);
  std::size_t tp = 0;
  std::size_t fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double v = scores[order[i]];
    // Everything strictly above v has been counted.
    curve.points.push_back({v, static_cast<double>(fp) / neg, static_cast<double>(tp) / pos});
    for (; i < order.size() && scores[order[i]] == v; ++i) {
      (labels[order[i]] != 0 ? tp : fp)++;
    }
  }
  curve.points.push_back({-std::numeric_limits<double>::infinity(), 1.0, 1.0});
  return curve;
}

OperatingPoint pd_at_pfa(const RocCurve& curve, double target_pfa) {
  OperatingPoint best;
  bool found = false;
  for (const RocPoint& p : curve.points) {
    if (p.pfa > target_pfa) break;
    best = {p.pd, p.pfa, p.threshold};
    found = true;
  }
  if (!found && !curve.points.empty()) {
    best = {0.0, curve.points.front().pfa, curve.points.front().threshold};
  }
  return best;
}

FarDispersion far_dispersion(std::span<const double> scores,
                             std::span<const std::uint8_t> labels, std::size_t block_len) {
  if (block_len == 0) throw std::invalid_argument("far_dispersion: block_len must be >= 1");
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("far_dispersion: scores and labels differ in length");
  }
  FarDispersion out;
  const std::size_t full_blocks = scores.size() / block_len;
  const std::size_t blocks = full_blocks == 0 ? 1 : full_blocks;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t first = b * block_len;
    const std::size_t last = std::min(scores.size(), first + block_len);
    std::size_t normals = 0;
    std::size_t alarms = 0;
    for (std::size_t i = first; i < last; ++i) {
      if (labels[i] != 0) continue;
      ++normals;
      if (scores[i] > 0.0) ++alarms;
    }
    if (normals > 0) {
      out.per_block_far.push_back(static_cast<double>(alarms) / static_cast<double>(normals));
    }
  }
  if (!out.per_block_far.empty()) {
    const double n = static_cast<double>(out.per_block_far.size());
    const double mean =
        std::accumulate(out.per_block_far.begin(), out.per_block_far.end(), 0.0) / n;
    double ss = 0.0;
    for (double f : out.per_block_far) ss += (f - mean) * (f - mean);
    out.variance = ss / n;
  }
  return out;
}

std::string_view to_string(Subset s) {
  switch (s) {
    case Subset::clear:
      return "clear";
    case Subset::clear_switch:
      return "clear+switch";
    case Subset::all:
      return "all";
  }
  return "all";
}

std::optional<Subset> parse_subset(std::string_view text) {
  if (text == "clear") return Subset::clear;
  if (text == "clear+switch") return Subset::clear_switch;
  if (text == "all") return Subset::all;
  return std::nullopt;
}

bool in_subset(Condition c, Subset s) {
  switch (s) {
    case Subset::clear:
      return c == Condition::clear;
    case Subset::clear_switch:
      return c == Condition::clear || c == Condition::track_switch;
    case Subset::all:
      return true;
  }
  return true;
}

LabeledScores filter_subset(std::span<const double> scores,
                            std::span<const std::uint8_t> labels,
                            std::span<const Condition> conditions, Subset subset) {
  if (scores.size() != labels.size() || scores.size() != conditions.size()) {
    throw std::invalid_argument("filter_subset: column lengths differ");
  }
  LabeledScores out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!in_subset(conditions[i], subset)) continue;
    out.scores.push_back(scores[i]);
    out.labels.push_back(labels[i]);
  }
  return out;
}

}  // namespace evtcfar
