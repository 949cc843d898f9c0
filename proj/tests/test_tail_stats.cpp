#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "evtcfar/tail_stats.hpp"
#include "oracles.hpp"

using namespace evtcfar;

TEST_SUITE("tail_stats") {

TEST_CASE("exponential tail CDF") {
  CHECK(exp_tail_cdf(0.0, ExpTail(2.0)) == 0.0);
  CHECK(exp_tail_cdf(3.0 * std::log(2.0), ExpTail(3.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(exp_tail_cdf(1.0, ExpTail(1.0)) == doctest::Approx(0.6321205588285577).epsilon(1e-15));
  CHECK_THROWS_AS(exp_tail_cdf(-0.1, ExpTail(1.0)), std::domain_error);
  CHECK_THROWS_AS(ExpTail(0.0), std::domain_error);
  CHECK_THROWS_AS(ExpTail(-1.0), std::domain_error);
  CHECK_THROWS_AS(ExpTail(std::numeric_limits<double>::infinity()), std::domain_error);

  const ExpTail tail(1.7);
  double prev = 0.0;
  for (double y = 0.0; y < 40.0; y += 0.25) {
    const double g = tail.cdf(y);
    CHECK(g >= prev);
    prev = g;
  }
  CHECK(tail.cdf(1e4) == 1.0);
}

TEST_CASE("CFAR offset") {
  CHECK(cfar_offset(1.0, 0.05, 0.001) == doctest::Approx(3.912023005428146).epsilon(1e-15));
  CHECK(cfar_offset(1.5, 0.05, 0.001) == doctest::Approx(5.868034508142219).epsilon(1e-15));
  CHECK(cfar_offset(2.0, 0.01 * std::exp(1.0), 0.01) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(cfar_offset(1.0, 0.05, 0.05), std::domain_error);
  CHECK_THROWS_AS(cfar_offset(1.0, 0.01, 0.05), std::domain_error);
  CHECK_THROWS_AS(cfar_offset(0.0, 0.05, 0.001), std::domain_error);

  // Survival of the offset equals p_f / p_u.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double sigma = 0.01 + 10.0 * unit(rng);
    const double p_u = 0.01 + 0.9 * unit(rng);
    const double p_f = p_u * (0.0001 + 0.99 * unit(rng));
    const double g = exp_tail_cdf(cfar_offset(sigma, p_u, p_f), ExpTail(sigma));
    CHECK(std::abs(g - (1.0 - p_f / p_u)) < 1e-12);
  }
}

TEST_CASE("tail count tolerates representation error") {
  CHECK(tail_count(100, 0.05) == 5);
  CHECK(tail_count(101, 0.05) == 5);
  CHECK(tail_count(100, 0.29) == 29);
  CHECK(tail_count(19, 0.05) == 0);
  CHECK(tail_count(20, 0.05) == 1);
}

TEST_CASE("find_tail examples") {
  std::vector<double> ramp(100);
  std::iota(ramp.begin(), ramp.end(), 1.0);
  const TailSample a = find_tail(ramp, 0.05);
  CHECK(a.u == 95.0);
  CHECK(a.n == 5);
  CHECK(a.s == 15.0);
  CHECK(a.excesses == std::vector<double>{1, 2, 3, 4, 5});

  const std::vector<double> constant(40, 3.25);
  const TailSample b = find_tail(constant, 0.1);
  CHECK(b.u == 3.25);
  CHECK(b.n == 4);
  CHECK(b.s == 0.0);
  CHECK(b.excesses == std::vector<double>(4, 0.0));

  std::vector<double> down(20);
  for (int i = 0; i < 20; ++i) down[static_cast<std::size_t>(i)] = 10.0 - i;
  const TailSample c = find_tail(down, 0.25);
  CHECK(c.u == 5.0);
  CHECK(c.excesses == std::vector<double>{1, 2, 3, 4, 5});

  CHECK_THROWS_AS(find_tail(std::vector<double>{}, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(find_tail(std::vector<double>(10, 1.0), 0.05), std::invalid_argument);
}

TEST_CASE("find_tail ties at the threshold contribute zero excesses") {
  const std::vector<double> x{1, 2, 5, 5, 5, 5, 0, 0, 0, 0};
  const TailSample t = find_tail_k(x, 3);
  CHECK(t.u == 5.0);
  CHECK(t.n == 3);
  CHECK(t.s == 0.0);
}

TEST_CASE("find_tail shift and scale") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> grid(-4096, 4096);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(200);
    for (double& v : x) v = grid(rng) / 64.0;
    const TailSample base = find_tail(x, 0.05);

    std::vector<double> shifted = x;
    for (double& v : shifted) v += 1000.0;
    const TailSample s = find_tail(shifted, 0.05);
    CHECK(s.u == base.u + 1000.0);
    CHECK(s.excesses == base.excesses);

    std::vector<double> scaled = x;
    for (double& v : scaled) v *= 2.5;
    const TailSample z = find_tail(scaled, 0.05);
    CHECK(z.u == doctest::Approx(2.5 * base.u));
    for (std::size_t j = 0; j < base.n; ++j) {
      CHECK(z.excesses[j] == doctest::Approx(2.5 * base.excesses[j]));
    }
  }
}

TEST_CASE("KS statistic examples") {
  CHECK(ks_statistic(std::vector<double>{0.5, 1.5}, ExpTail(1.0)) ==
        doctest::Approx(0.3934693402873666).epsilon(1e-15));
  for (double sigma : {0.3, 1.0, 7.0}) {
    CHECK(ks_statistic(std::vector<double>{sigma * std::log(2.0)}, ExpTail(sigma)) ==
          doctest::Approx(0.5).epsilon(1e-14));
  }
  CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, ExpTail(1.0)), std::invalid_argument);
}

TEST_CASE("KS statistic matches the two-edge oracle and ignores order") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 50);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double sigma = 0.2 + 4.0 * unit(rng);
    std::vector<double> x = oracle::exponential_sample(rng, len(rng), sigma * (0.5 + unit(rng)));
    if (t % 7 == 0) x.push_back(x.front());  // ties
    const double d = ks_statistic(x, ExpTail(sigma));
    CHECK(std::abs(d - oracle::ks_distance(x, sigma)) < 1e-12);
    std::shuffle(x.begin(), x.end(), rng);
    CHECK(ks_statistic(x, ExpTail(sigma)) == d);
  }
}

TEST_CASE("KS statistic of matching exponential samples is small") {
  // sqrt(n) D_n is asymptotically Kolmogorov distributed; P(K > 0.07 sqrt(1000))
  // = P(K > 2.21) < 1e-4, so 200 seeds should essentially never exceed it.
  std::mt19937_64 rng(99);
  int above = 0;
  for (int seed = 0; seed < 200; ++seed) {
    const auto x = oracle::exponential_sample(rng, 1000, 2.0);
    if (ks_statistic(x, ExpTail(2.0)) >= 0.07) ++above;
  }
  CHECK(above <= 2);
}

TEST_CASE("KS anomaly scan") {
  const std::vector<double> y{50, 2.3, 1.9, 1.2, 0.8, 0.5, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01};
  const ScanResult r = ks_anomaly_scan(y, 5, 3, ExpTail(1.0));
  CHECK(r.i_hat == 2);
  CHECK(r.u_prime == 2.3);
  REQUIRE(r.distances.size() == 3);

  // Brute force over each candidate window.
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<double> t;
    for (std::size_t j = i; j <= i + 5; ++j) t.push_back(y[j] - y[i + 5]);
    CHECK(r.distances[i] == doctest::Approx(oracle::ks_distance(t, 1.0)).epsilon(1e-12));
  }
  CHECK(r.distances[0] == doctest::Approx(0.25340303605839354));
  CHECK(r.distances[1] == doctest::Approx(1.0 / 6.0));
  CHECK(r.distances[2] == doctest::Approx(0.24081822068171788));

  const ScanResult one = ks_anomaly_scan(y, 5, 1, ExpTail(1.0));
  CHECK(one.i_hat == 1);
  CHECK(one.u_prime == 50.0);

  CHECK_THROWS_AS(ks_anomaly_scan(y, 5, 7, ExpTail(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(ks_anomaly_scan(y, 0, 3, ExpTail(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(ks_anomaly_scan(y, 5, 0, ExpTail(1.0)), std::invalid_argument);
  std::vector<double> unsorted = y;
  std::swap(unsorted[1], unsorted[2]);
  CHECK_THROWS_AS(ks_anomaly_scan(unsorted, 5, 3, ExpTail(1.0)), std::invalid_argument);
}

TEST_CASE("KS scan keeps the whole tail on most clean sequences") {
  std::mt19937_64 rng(5);
  int kept = 0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    auto x = oracle::exponential_sample(rng, 500, 1.0);
    for (double& v : x) v += 3.0;
    std::sort(x.begin(), x.end(), std::greater<>());
    if (ks_anomaly_scan(x, 25, 12, ExpTail(1.0)).i_hat == 1) ++kept;
  }
  CHECK(kept * 2 > trials);
}

TEST_CASE("Gamma posterior and MAP scale") {
  CHECK(gamma_posterior({1, 0}, 5, 15) == GammaParams{6, 15});
  CHECK(gamma_posterior({401, 800}, 0, 0) == GammaParams{401, 800});
  CHECK(gamma_posterior({401, 800}, 100, 250) == GammaParams{501, 1050});
  CHECK(map_scale({6, 15}) == 3.0);
  CHECK(map_scale({401, 800}) == 2.0);
  CHECK(map_scale({501, 1050}) == doctest::Approx(2.1).epsilon(1e-15));
  CHECK_THROWS_AS(map_scale({1, 5}), std::domain_error);
  CHECK_THROWS_AS(map_scale({3, 0}), std::domain_error);
  CHECK_THROWS_AS(gamma_posterior({0.5, 1}, 1, 1), std::domain_error);
  CHECK_THROWS_AS(gamma_posterior({2, 1}, 1, -1), std::domain_error);
}

TEST_CASE("Gamma posterior is associative over integer batches") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> count(0, 5000);
  std::uniform_int_distribution<int> units(0, 1 << 20);
  for (int t = 0; t < 1000; ++t) {
    // Sums on a dyadic grid so that batch sums are exact in binary.
    const double s1 = units(rng) / 1024.0;
    const double s2 = units(rng) / 1024.0;
    const double n1 = count(rng);
    const double n2 = count(rng);
    const GammaParams prior{1.0 + count(rng), units(rng) / 1024.0};
    CHECK(gamma_posterior(gamma_posterior(prior, n1, s1), n2, s2) ==
          gamma_posterior(prior, n1 + n2, s1 + s2));
  }
}

TEST_CASE("MAP under the improper prior is the mean excess") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> count(1, 100000);
  std::uniform_real_distribution<double> sum(1e-6, 1e6);
  for (int t = 0; t < 1000; ++t) {
    const double n = count(rng);
    const double s = sum(rng);
    CHECK(map_scale(gamma_posterior({1.0, 0.0}, n, s)) == s / n);
  }
}

TEST_CASE("compensated summation recovers cancelled terms") {
  CompensatedSum acc;
  acc.add(1.0);
  acc.add(1e100);
  acc.add(1.0);
  acc.add(-1e100);
  CHECK(acc.value() == 2.0);
}

}  // TEST_SUITE
