#include <map>

#include "evtcfar/io.hpp"

namespace evtcfar {

PriorFile parse_prior(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw DataError("prior file: expected key=value, got '" + std::string(line) + "'");
    }
    const auto [it, fresh] =
        kv.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
    if (!fresh) throw DataError("prior file: duplicate key '" + it->first + "'");
  }

  auto take = [&](std::string_view key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw DataError("prior file: missing '" + std::string(key) + "'");
    std::string value = it->second;
    kv.erase(it);
    return value;
  };

  if (take("format_version") != std::to_string(kPriorFormatVersion)) {
    throw DataError("prior file: unsupported format_version");
  }
  PriorFile out;
  out.prior.alpha = parse_real(take("alpha0"));
  out.prior.beta = parse_real(take("beta0"));
  out.p_u = parse_real(take("p_u"));
  out.w0 = parse_real(take("w0"));
  if (!kv.empty()) throw DataError("prior file: unknown key '" + kv.begin()->first + "'");
  try {
    out.prior.validate();
  } catch (const std::domain_error& e) {
    throw DataError(std::string("prior file: ") + e.what());
  }
  return out;
}

std::string serialize_prior(const PriorFile& prior) {
  std::string out;
  out += "format_version=" + std::to_string(kPriorFormatVersion) + "\n";
  out += "alpha0=" + format_real(prior.prior.alpha) + "\n";
  out += "beta0=" + format_real(prior.prior.beta) + "\n";
  out += "p_u=" + format_real(prior.p_u) + "\n";
  out += "w0=" + format_real(prior.w0) + "\n";
  return out;
}

}  // namespace evtcfar
