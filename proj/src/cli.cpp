#include "evtcfar/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include "evtcfar/adapter.hpp"
#include "evtcfar/eval.hpp"
#include "evtcfar/io.hpp"
#include "evtcfar/report.hpp"
#include "evtcfar/synth.hpp"
#include "evtcfar/trainer.hpp"

namespace evtcfar::cli {
namespace {

namespace fs = std::filesystem;

const std::map<std::string, Orientation> kOrientations{
    {"anomaly_low", Orientation::anomaly_low}, {"anomaly_high", Orientation::anomaly_high}};
const std::map<std::string, Boundary> kBoundaries{{"clamp", Boundary::clamp},
                                                  {"shrink", Boundary::shrink}};
const std::map<std::string, bool> kOnOff{{"on", true}, {"off", false}};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Configuration errors are usage errors, not data errors.
template <typename Fn>
void check_config(Fn&& validate) {
  try {
    validate();
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(e.what());
  }
}

struct SynthArgs {
  std::string out;
  SynthConfig config;
  std::size_t sequences = 1;
};

struct TrainArgs {
  std::string corpus;
  std::string out;
  TrainConfig config;
  std::string exclude;
  std::string orientation = "anomaly_low";
};

struct AdaptArgs {
  std::string corpus;
  std::string prior;
  std::string out;
  AdaptConfig config;
  unsigned threads = 0;
  std::string orientation = "anomaly_low";
  std::string censor = "on";
  std::string boundary = "clamp";
};

struct EvalArgs {
  std::string adapted;
  std::string subsets = "clear,clear+switch,all";
  std::string pfas = "0.001,0.0002";
  std::string raw_orientation = "anomaly_low";
  std::string report;
  std::string out_dir;
};

int run_synth(const SynthArgs& a, std::ostream& out) {
  check_config([&] { a.config.validate(); });
  std::vector<LabeledSequence> corpus;
  for (std::size_t j = 0; j < a.sequences; ++j) {
    SynthConfig c = a.config;
    c.seed = a.config.seed + j;
    if (a.sequences > 1) {
      char id[32];
      std::snprintf(id, sizeof id, "-%03zu", j);
      c.seq_id += id;
    }
    corpus.push_back(generate(c));
  }
  write_file_atomic(a.out, serialize_corpus(corpus));
  out << "wrote " << corpus.size() << " sequence(s) to " << a.out << "\n";
  return kSuccess;
}

int run_train(TrainArgs a, std::ostream& out, std::ostream& err) {
  a.config.orientation = kOrientations.at(a.orientation);
  a.config.exclude = split_list(a.exclude);
  check_config([&] { a.config.validate(); });
  const std::vector<LabeledSequence> corpus = parse_corpus(read_file(a.corpus));
  const TrainResult result = train(corpus, a.config);
  for (const std::string& id : result.skipped) {
    err << "warning: sequence '" << id << "' is too short for p_u=" << a.config.p_u
        << "; skipped\n";
  }
  write_file_atomic(a.out, serialize_prior({result.prior, a.config.p_u, a.config.w0}));
  out << "alpha0=" << format_real(result.prior.alpha) << " beta0=" << format_real(result.prior.beta)
      << " tail_count=" << result.tail_count << "\n";
  return kSuccess;
}

int run_adapt(AdaptArgs a, std::ostream& out, std::ostream& err) {
  a.config.orientation = kOrientations.at(a.orientation);
  a.config.censor = kOnOff.at(a.censor);
  a.config.boundary = kBoundaries.at(a.boundary);
  check_config([&] { a.config.validate(); });
  const PriorFile prior = parse_prior(read_file(a.prior));
  std::vector<LabeledSequence> corpus = parse_corpus(read_file(a.corpus));
  const std::vector<AdaptOutcome> outcomes = adapt_corpus(corpus, prior.prior, a.config, a.threads);

  std::vector<ScoredSequence> scored;
  std::size_t failed = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].adapted) {
      err << "error: sequence '" << outcomes[i].seq_id << "': " << outcomes[i].error << "\n";
      ++failed;
      continue;
    }
    scored.push_back({std::move(corpus[i]), outcomes[i].adapted->adapted_scores});
  }
  write_file_atomic(a.out, serialize_adapted(scored));
  out << "adapted " << scored.size() << " of " << outcomes.size() << " sequence(s)\n";
  return failed == 0 ? kSuccess : kPartialFailure;
}

std::string file_stem(Subset s) {
  std::string name(to_string(s));
  for (char& c : name) {
    if (c == '+') c = '_';
  }
  return name;
}

int run_eval(const EvalArgs& a, std::ostream& out) {
  std::vector<Subset> subsets;
  for (const std::string& name : split_list(a.subsets)) {
    const auto s = parse_subset(name);
    if (!s) throw CLI::ValidationError("--subset", "unknown subset '" + name + "'");
    subsets.push_back(*s);
  }
  std::vector<double> pfas;
  for (const std::string& text : split_list(a.pfas)) {
    double v = 0.0;
    try {
      v = parse_real(text);
    } catch (const DataError&) {
      throw CLI::ValidationError("--pfa", "invalid probability '" + text + "'");
    }
    if (!(v > 0.0 && v <= 1.0)) throw CLI::ValidationError("--pfa", "must lie in (0, 1]");
    pfas.push_back(v);
  }

  const std::vector<ScoredSequence> data = parse_adapted(read_file(a.adapted));
  std::vector<SubsetCurves> curves;
  for (Subset s : subsets) curves.push_back(subset_curves(data, s, kOrientations.at(a.raw_orientation)));
  const std::string report = format_report(evaluate(curves, pfas));

  if (!a.out_dir.empty()) {
    fs::create_directories(a.out_dir);
    for (const SubsetCurves& c : curves) {
      const std::string stem = file_stem(c.subset);
      write_file_atomic(fs::path(a.out_dir) / ("roc_" + stem + "_adapted.csv"), roc_csv(c.adapted));
      write_file_atomic(fs::path(a.out_dir) / ("roc_" + stem + "_raw.csv"), roc_csv(c.raw));
      write_file_atomic(fs::path(a.out_dir) / ("roc_" + stem + ".svg"),
                        roc_svg(c.adapted, c.raw, "ROC, subset " + std::string(to_string(c.subset))));
    }
  }
  if (a.report.empty()) {
    out << report;
  } else {
    write_file_atomic(a.report, report);
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extreme-value score adaptation for constant false-alarm-rate detection",
               "evtcfar"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic labeled corpus");
  synth->add_option("--out", synth_args.out, "Output corpus CSV")->required();
  synth->add_option("--n", synth_args.config.n, "Samples per sequence");
  synth->add_option("--sequences", synth_args.sequences, "Number of sequences")
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_args.config.seed, "Seed of the first sequence");
  synth->add_option("--drift-rate", synth_args.config.drift_rate, "Mean reversion of the location");
  synth->add_option("--drift-noise", synth_args.config.drift_noise, "Std of location innovations");
  synth->add_option("--scale", synth_args.config.base_scale, "Scale of the score noise");
  synth->add_option("--anomaly-rate", synth_args.config.anomaly_rate, "Anomaly probability");
  synth->add_option("--anomaly-offset", synth_args.config.anomaly_offset, "Anomaly score drop");
  synth->add_option("--segment-len", synth_args.config.segment_len, "Piecewise drift block");
  synth->add_option("--pool-size", synth_args.config.pool_size, "Draws max-pooled per sample");
  synth->add_option("--seq-id", synth_args.config.seq_id, "Sequence id (prefix)");

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Learn the tail prior from a labeled corpus");
  train_cmd->add_option("corpus", train_args.corpus, "Corpus CSV")->required();
  train_cmd->add_option("--out", train_args.out, "Output prior file")->required();
  train_cmd->add_option("--pu", train_args.config.p_u, "Tail probability");
  train_cmd->add_option("--w0", train_args.config.w0, "Prior pseudo-sample weight");
  train_cmd->add_option("--exclude", train_args.exclude, "Comma-separated seq_ids to leave out");
  train_cmd->add_option("--orientation", train_args.orientation, "Anomalous tail")
      ->check(CLI::IsMember(kOrientations));
  train_cmd->add_flag("--exclude-non-clear", train_args.config.exclude_non_clear,
                      "Train on clear samples only");

  AdaptArgs adapt_args;
  auto* adapt_cmd = app.add_subcommand("adapt", "Adapt corpus scores with a trained prior");
  adapt_cmd->add_option("corpus", adapt_args.corpus, "Corpus CSV")->required();
  adapt_cmd->add_option("--prior", adapt_args.prior, "Prior file")->required();
  adapt_cmd->add_option("--out", adapt_args.out, "Output adapted CSV")->required();
  adapt_cmd->add_option("--pu", adapt_args.config.p_u, "Tail probability");
  adapt_cmd->add_option("--pf", adapt_args.config.p_f, "Target false-alarm probability");
  adapt_cmd->add_option("--w1", adapt_args.config.w1, "Sequence pseudo-sample weight");
  adapt_cmd->add_option("--L", adapt_args.config.window_length, "Window length (odd)");
  adapt_cmd->add_option("--na", adapt_args.config.max_anomalies, "Max anomalies for the KS scan");
  adapt_cmd->add_option("--orientation", adapt_args.orientation, "Anomalous tail")
      ->check(CLI::IsMember(kOrientations));
  adapt_cmd->add_option("--censor", adapt_args.censor, "Clip windows at u' (on|off)")
      ->check(CLI::IsMember(kOnOff));
  adapt_cmd->add_option("--boundary", adapt_args.boundary, "Edge windows (clamp|shrink)")
      ->check(CLI::IsMember(kBoundaries));
  adapt_cmd->add_flag("--good-high", adapt_args.config.good_high_output,
                      "Emit negated adapted scores (normal samples high)");
  adapt_cmd->add_option("--threads", adapt_args.threads, "Worker threads (0 = all cores)");

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "ROC evaluation of adapted versus raw scores");
  eval_cmd->add_option("adapted", eval_args.adapted, "Adapted CSV")->required();
  eval_cmd->add_option("--subset", eval_args.subsets, "clear, clear+switch, all (comma list)");
  eval_cmd->add_option("--pfa", eval_args.pfas, "Comma-separated target PFAs");
  eval_cmd->add_option("--orientation", eval_args.raw_orientation, "Anomalous tail of raw scores")
      ->check(CLI::IsMember(kOrientations));
  eval_cmd->add_option("--report", eval_args.report, "Write the report here instead of stdout");
  eval_cmd->add_option("--out-dir", eval_args.out_dir, "Directory for ROC CSV and SVG files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*synth) return run_synth(synth_args, out);
    if (*train_cmd) return run_train(train_args, out, err);
    if (*adapt_cmd) return run_adapt(adapt_args, out, err);
    if (*eval_cmd) return run_eval(eval_args, out);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace evtcfar::cli
