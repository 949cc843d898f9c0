// Synthetic labeled score sequences with a slowly drifting location.
//
// Raw scores follow the anomaly_low convention (normal samples score high):
//
//   m_t = m_{t-1} + drift_rate * (mean_level - m_{t-1}) + drift_noise * N(0,1)
//   x_t = m_t - base_scale * max(G_1, ..., G_pool_size) - [anomaly] * anomaly_offset
//
// with G_j i.i.d. standard Gumbel, so the oriented noise -x_t + m_t is again
// Gumbel with an exponential upper tail. With segment_len > 0 the location
// only moves at multiples of segment_len (piecewise-constant drift).
//
// Random numbers come from std::mt19937_64 (fully specified by the standard)
// with the transforms in synth.cpp, so a seed gives the same sequence on
// every conforming platform.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "evtcfar/sequence.hpp"

namespace evtcfar {

struct SynthConfig {
  std::size_t n = 10000;
  std::uint64_t seed = 1;
  double drift_rate = 0.0;   // mean reversion, in [0, 1)
  double drift_noise = 0.0;  // std of location innovations
  double base_scale = 1.0;
  double anomaly_rate = 0.0;
  double anomaly_offset = 8.0;
  std::size_t segment_len = 0;
  std::size_t pool_size = 4;
  double mean_level = 0.0;
  std::string seq_id = "synth";

  void validate() const;
};

LabeledSequence generate(const SynthConfig& config);

}  // namespace evtcfar
