// Times adaptation of one long synthetic sequence with the default settings.
//   bench_adapt [n_samples]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "evtcfar/adapter.hpp"
#include "evtcfar/synth.hpp"
#include "evtcfar/trainer.hpp"

int main(int argc, char** argv) {
  using namespace evtcfar;
  SynthConfig sc;
  sc.n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1'000'000;
  sc.seed = 7;
  sc.drift_rate = 0.001;
  sc.drift_noise = 0.03;
  const LabeledSequence seq = generate(sc);

  const LabeledSequence train_seq = generate({.n = 100'000, .seed = 8});
  const GammaParams prior = train(std::span(&train_seq, 1), TrainConfig{}).prior;

  const auto start = std::chrono::steady_clock::now();
  const AdaptedSequence out = adapt_sequence(seq, prior, AdaptConfig{});
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  std::printf("adapted %zu samples in %.3f s (sigma_seq=%.4f, i_hat=%zu)\n",
              out.adapted_scores.size(), took.count(), out.sigma_seq, out.i_hat);
  return 0;
}
