#include "evtcfar/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace evtcfar {
namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr double kMinLogPfa = -5.0;  // 1e-5
constexpr double kPlotLeft = 60.0;
constexpr double kPlotTop = 40.0;
constexpr double kPlotWidth = 480.0;
constexpr double kPlotHeight = 320.0;

double x_of(double pfa) {
  const double lp = pfa > 0.0 ? std::max(kMinLogPfa, std::log10(pfa)) : kMinLogPfa;
  return kPlotLeft + (lp - kMinLogPfa) / -kMinLogPfa * kPlotWidth;
}

double y_of(double pd) { return kPlotTop + (1.0 - pd) * kPlotHeight; }

std::string polyline(const RocCurve& curve, std::string_view colour) {
  std::string pts;
  std::string last;
  for (const RocPoint& p : curve.points) {
    std::string xy = fixed(x_of(p.pfa), 1) + "," + fixed(y_of(p.pd), 1);
    if (xy == last) continue;
    if (!pts.empty()) pts += ' ';
    pts += xy;
    last = std::move(xy);
  }
  return "  <polyline fill=\"none\" stroke=\"" + std::string(colour) +
         "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
}

}  // namespace

SubsetCurves subset_curves(const std::vector<ScoredSequence>& data, Subset subset,
                           Orientation raw_orientation) {
  std::vector<double> adapted;
  std::vector<double> raw;
  std::vector<std::uint8_t> labels;
  for (const ScoredSequence& s : data) {
    const std::vector<double> oriented = orient(s.seq.scores, raw_orientation);
    for (std::size_t i = 0; i < s.seq.size(); ++i) {
      if (!in_subset(s.seq.conditions[i], subset)) continue;
      adapted.push_back(s.adapted[i]);
      raw.push_back(oriented[i]);
      labels.push_back(s.seq.labels[i]);
    }
  }
  SubsetCurves out;
  out.subset = subset;
  try {
    out.adapted = roc(adapted, labels);
    out.raw = roc(raw, labels);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("subset '" + std::string(to_string(subset)) +
                                "' does not contain both normal and anomalous samples");
  }
  return out;
}

std::vector<EvalRow> evaluate(const std::vector<SubsetCurves>& curves,
                              std::span<const double> target_pfas) {
  std::vector<EvalRow> rows;
  for (const SubsetCurves& c : curves) {
    for (double pfa : target_pfas) {
      rows.push_back({c.subset, pfa, pd_at_pfa(c.adapted, pfa), pd_at_pfa(c.raw, pfa)});
    }
  }
  return rows;
}

std::string format_report(const std::vector<EvalRow>& rows) {
  std::string out;
  out += "Condition      |      PFA | Adapted PD |   Raw PD | Adapted PFA |  Raw PFA\n";
  out += "---------------+----------+------------+----------+-------------+---------\n";
  for (const EvalRow& r : rows) {
    std::string cond(to_string(r.subset));
    cond.resize(14, ' ');
    out += cond + " | " + pad(fixed(100.0 * r.target_pfa, 3) + "%", 8) + " | " +
           pad(fixed(100.0 * r.adapted.pd, 2) + "%", 10) + " | " +
           pad(fixed(100.0 * r.raw.pd, 2) + "%", 8) + " | " +
           pad(fixed(100.0 * r.adapted.achieved_pfa, 4) + "%", 11) + " | " +
           pad(fixed(100.0 * r.raw.achieved_pfa, 4) + "%", 8) + "\n";
  }
  return out;
}

std::string roc_csv(const RocCurve& curve) {
  std::string out = "threshold,pfa,pd\n";
  for (const RocPoint& p : curve.points) {
    out += format_real(p.threshold) + "," + format_real(p.pfa) + "," + format_real(p.pd) + "\n";
  }
  return out;
}

std::string roc_svg(const RocCurve& adapted, const RocCurve& raw, std::string_view title) {
  const double right = kPlotLeft + kPlotWidth;
  const double bottom = kPlotTop + kPlotHeight;
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"420\" "
         "viewBox=\"0 0 600 420\">\n";
  out += "  <rect width=\"600\" height=\"420\" fill=\"white\"/>\n";
  out += "  <text x=\"300\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">" + xml_escape(title) + "</text>\n";
  out += "  <rect x=\"" + fixed(kPlotLeft, 1) + "\" y=\"" + fixed(kPlotTop, 1) + "\" width=\"" +
         fixed(kPlotWidth, 1) + "\" height=\"" + fixed(kPlotHeight, 1) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(kMinLogPfa); e <= 0; ++e) {
    const double x = x_of(std::pow(10.0, e));
    out += "  <line x1=\"" + fixed(x, 1) + "\" y1=\"" + fixed(kPlotTop, 1) + "\" x2=\"" +
           fixed(x, 1) + "\" y2=\"" + fixed(bottom, 1) + "\" stroke=\"#dddddd\"/>\n";
    out += "  <text x=\"" + fixed(x, 1) + "\" y=\"" + fixed(bottom + 16, 1) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1e" +
           std::to_string(e) + "</text>\n";
  }
  for (int t = 0; t <= 10; t += 2) {
    const double y = y_of(t / 10.0);
    out += "  <line x1=\"" + fixed(kPlotLeft, 1) + "\" y1=\"" + fixed(y, 1) + "\" x2=\"" +
           fixed(right, 1) + "\" y2=\"" + fixed(y, 1) + "\" stroke=\"#dddddd\"/>\n";
    out += "  <text x=\"" + fixed(kPlotLeft - 6, 1) + "\" y=\"" + fixed(y + 4, 1) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
           fixed(t / 10.0, 1) + "</text>\n";
  }
  out += "  <text x=\"300\" y=\"" + fixed(bottom + 34, 1) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">PFA</text>\n";
  out += "  <text x=\"16\" y=\"200\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 200)\">PD</text>\n";
  out += polyline(raw, "#d62728");
  out += polyline(adapted, "#1f77b4");
  out += "  <text x=\"" + fixed(right - 110, 1) + "\" y=\"" + fixed(bottom - 30, 1) +
         "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#1f77b4\">adapted</text>\n";
  out += "  <text x=\"" + fixed(right - 110, 1) + "\" y=\"" + fixed(bottom - 14, 1) +
         "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#d62728\">raw</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace evtcfar
