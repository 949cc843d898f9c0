#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "evtcfar/io.hpp"

namespace evtcfar {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("invalid integer '" + std::string(text) + "'");
  }
  return v;
}

// Iterates the data lines of a CSV after checking its header.
template <typename RowFn>
void for_each_row(std::string_view text, std::string_view header, RowFn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_header = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      throw DataError("line " + std::to_string(line_no) + ": CRLF line endings are not accepted");
    }
    if (!seen_header) {
      if (line != header) {
        throw DataError("expected header '" + std::string(header) + "'");
      }
      seen_header = true;
      continue;
    }
    if (line.empty()) continue;
    try {
      fn(split(line, ','));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!seen_header) throw DataError("empty CSV input");
}

struct CorpusBuilder {
  std::vector<ScoredSequence> sequences;
  std::map<std::string, std::size_t, std::less<>> index;

  ScoredSequence& get(std::string_view id) {
    auto it = index.find(id);
    if (it == index.end()) {
      it = index.emplace(std::string(id), sequences.size()).first;
      sequences.emplace_back();
      sequences.back().seq.seq_id = std::string(id);
    }
    return sequences[it->second];
  }

  void add(const std::vector<std::string_view>& f) {
    if (f[0].empty()) throw DataError("empty seq_id");
    ScoredSequence& s = get(f[0]);
    const std::int64_t frame = parse_int(f[1]);
    if (!s.seq.frames.empty() && frame <= s.seq.frames.back()) {
      throw DataError("frame_index must be strictly increasing within '" + s.seq.seq_id + "'");
    }
    const double score = parse_real(f[2]);
    const std::int64_t label = parse_int(f[3]);
    if (label != 0 && label != 1) throw DataError("label must be 0 or 1");
    const auto cond = parse_condition(f[4]);
    if (!cond) throw DataError("unknown condition '" + std::string(f[4]) + "'");
    s.seq.frames.push_back(frame);
    s.seq.scores.push_back(score);
    s.seq.labels.push_back(static_cast<std::uint8_t>(label));
    s.seq.conditions.push_back(*cond);
  }
};

void append_row(std::string& out, const LabeledSequence& seq, std::size_t i) {
  out += seq.seq_id;
  out += ',';
  out += std::to_string(seq.frames[i]);
  out += ',';
  out += format_real(seq.scores[i]);
  out += ',';
  out += seq.labels[i] != 0 ? '1' : '0';
  out += ',';
  out += to_string(seq.conditions[i]);
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

double parse_real(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw DataError("invalid real '" + std::string(text) + "'");
  }
  return v;
}

std::vector<LabeledSequence> parse_corpus(std::string_view text) {
  CorpusBuilder builder;
  for_each_row(text, kCorpusHeader, [&](const std::vector<std::string_view>& f) {
    if (f.size() != 5) throw DataError("expected 5 fields, got " + std::to_string(f.size()));
    builder.add(f);
  });
  std::vector<LabeledSequence> out;
  out.reserve(builder.sequences.size());
  for (auto& s : builder.sequences) out.push_back(std::move(s.seq));
  return out;
}

std::string serialize_corpus(const std::vector<LabeledSequence>& corpus) {
  std::string out(kCorpusHeader);
  out += '\n';
  for (const LabeledSequence& seq : corpus) {
    seq.validate();
    for (std::size_t i = 0; i < seq.size(); ++i) {
      append_row(out, seq, i);
      out += '\n';
    }
  }
  return out;
}

std::vector<ScoredSequence> parse_adapted(std::string_view text) {
  CorpusBuilder builder;
  for_each_row(text, kAdaptedHeader, [&](const std::vector<std::string_view>& f) {
    if (f.size() != 6) throw DataError("expected 6 fields, got " + std::to_string(f.size()));
    builder.add(f);
    builder.get(f[0]).adapted.push_back(parse_real(f[5]));
  });
  return std::move(builder.sequences);
}

std::string serialize_adapted(const std::vector<ScoredSequence>& scored) {
  std::string out(kAdaptedHeader);
  out += '\n';
  for (const ScoredSequence& s : scored) {
    s.seq.validate();
    if (s.adapted.size() != s.seq.size()) {
      throw std::invalid_argument("adapted scores of '" + s.seq.seq_id + "' differ in length");
    }
    for (std::size_t i = 0; i < s.seq.size(); ++i) {
      append_row(out, s.seq, i);
      out += ',';
      out += format_real(s.adapted[i]);
      out += '\n';
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw DataError("failed writing '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace evtcfar
