// Text report, ROC CSV and SVG plot emitted by the eval command.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evtcfar/eval.hpp"
#include "evtcfar/io.hpp"

namespace evtcfar {

struct EvalRow {
  Subset subset = Subset::all;
  double target_pfa = 0.0;
  OperatingPoint adapted;
  OperatingPoint raw;
};

struct SubsetCurves {
  Subset subset = Subset::all;
  RocCurve adapted;
  RocCurve raw;
};

/// Adapted scores are taken as anomaly-high; raw scores are oriented with
/// `raw_orientation` first. Throws std::invalid_argument on single-class
/// subsets.
SubsetCurves subset_curves(const std::vector<ScoredSequence>& data, Subset subset,
                           Orientation raw_orientation);

std::vector<EvalRow> evaluate(const std::vector<SubsetCurves>& curves,
                              std::span<const double> target_pfas);

/// Table with one row per subset and PFA, PD in percent for both methods.
std::string format_report(const std::vector<EvalRow>& rows);

/// "threshold,pfa,pd" followed by one line per point.
std::string roc_csv(const RocCurve& curve);

/// Static ROC plot on a log PFA axis with the adapted and raw curves.
std::string roc_svg(const RocCurve& adapted, const RocCurve& raw, std::string_view title);

}  // namespace evtcfar
