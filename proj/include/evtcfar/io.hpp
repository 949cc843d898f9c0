// File formats: corpus CSV, adapted CSV and the prior key=value file.
//
// Corpus CSV:  seq_id,frame_index,score,label,condition
// Adapted CSV: the corpus columns followed by adapted_score
//
// UTF-8, LF line endings, no quoting (seq_id must not contain commas or
// newlines). Reals are written with 17 significant digits so they read back
// to the same double.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evtcfar/sequence.hpp"
#include "evtcfar/tail_stats.hpp"

namespace evtcfar {

/// Malformed or unreadable input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_real(double v);
/// Strict parse of a whole field. Throws DataError.
double parse_real(std::string_view text);

inline constexpr std::string_view kCorpusHeader = "seq_id,frame_index,score,label,condition";
inline constexpr std::string_view kAdaptedHeader =
    "seq_id,frame_index,score,label,condition,adapted_score";

/// Sequences appear in order of first occurrence of their seq_id.
std::vector<LabeledSequence> parse_corpus(std::string_view text);
std::string serialize_corpus(const std::vector<LabeledSequence>& corpus);

struct ScoredSequence {
  LabeledSequence seq;
  std::vector<double> adapted;
};

std::vector<ScoredSequence> parse_adapted(std::string_view text);
std::string serialize_adapted(const std::vector<ScoredSequence>& scored);

struct PriorFile {
  GammaParams prior;
  double p_u = 0.05;
  double w0 = 400.0;

  friend bool operator==(const PriorFile&, const PriorFile&) = default;
};

inline constexpr int kPriorFormatVersion = 1;

PriorFile parse_prior(std::string_view text);
std::string serialize_prior(const PriorFile& prior);

/// Whole-file read. Throws DataError if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace evtcfar
