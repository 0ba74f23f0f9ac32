#include <doctest.h>

#include <cmath>
#include <numeric>

#include "szego/direct.hpp"
#include "szego/error.hpp"
#include "szego/kernels.hpp"
#include "szego/mcbeta.hpp"

using namespace szego;

namespace {

// mean and autocorrelation-corrected standard error of a scalar chain
std::pair<double, double> chain_stats(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= n - 1.0;
  return {mean, std::sqrt(var * integrated_autocorrelation(x) / n)};
}

}  // namespace

TEST_CASE("config validation") {
  ChainConfig c;
  CHECK_NOTHROW(validate(c));
  c.burn_in = c.steps;
  CHECK_THROWS_AS(validate(c), Error);
  c = ChainConfig{};
  c.proposal_width = 4.0;
  CHECK_THROWS_AS(validate(c), Error);
  c.proposal_width = 0.0;
  CHECK_THROWS_AS(validate(c), Error);
  c = ChainConfig{};
  c.beta = -1.0;
  CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("n = 1 angles are uniform") {
  ChainConfig c;
  c.n = 1;
  c.steps = 40000;
  c.burn_in = 2000;
  c.seed = 7;
  const auto samples = sample_circular_beta(c);
  CHECK(samples.size() == 38000);
  std::vector<double> re, im;
  for (const auto& s : samples) {
    re.push_back(std::cos(s[0]));
    im.push_back(std::sin(s[0]));
    CHECK(s[0] >= -M_PI);
    CHECK(s[0] < M_PI);
  }
  const auto [mr, er] = chain_stats(re);
  const auto [mi, ei] = chain_stats(im);
  CHECK(std::abs(mr) < 3 * er);
  CHECK(std::abs(mi) < 3 * ei);
}

TEST_CASE("n = 2, beta = 2 pair statistic") {
  ChainConfig c;
  c.n = 2;
  c.steps = 60000;
  c.burn_in = 5000;
  c.seed = 11;
  std::vector<double> d2;
  for (const auto& s : sample_circular_beta(c)) d2.push_back(std::norm(std::polar(1.0, s[0]) - std::polar(1.0, s[1])));
  const auto [mean, err] = chain_stats(d2);
  CHECK(std::abs(mean - 3.0) < 3 * err);
}

TEST_CASE("same seed reproduces the chain") {
  ChainConfig c;
  c.n = 3;
  c.steps = 3000;
  c.burn_in = 500;
  c.seed = 99;
  CHECK(sample_circular_beta(c) == sample_circular_beta(c));
  c.seed = 100;
  const auto other = sample_circular_beta(c);
  c.seed = 99;
  CHECK(sample_circular_beta(c) != other);
}

TEST_CASE("tuning lands acceptance in [0.2, 0.6]") {
  for (double beta : {1.0, 2.0, 4.0}) {
    for (double w : {0.05, 1.0, M_PI}) {
      ChainConfig c;
      c.n = 4;
      c.beta = beta;
      c.steps = 20000;
      c.burn_in = 5000;
      c.proposal_width = w;
      CircularBetaSampler chain(c);
      while (chain.sweeps_done() < c.steps) chain.sweep();
      CHECK(chain.acceptance_rate() >= 0.2);
      CHECK(chain.acceptance_rate() <= 0.6);
      CHECK(chain.width() <= M_PI);
    }
  }
}

TEST_CASE("weak repulsion saturates the proposal width") {
  ChainConfig c;
  c.n = 4;
  c.beta = 0.5;
  c.steps = 20000;
  c.burn_in = 5000;
  CircularBetaSampler chain(c);
  while (chain.sweeps_done() < c.steps) chain.sweep();
  CHECK(chain.width() == M_PI);
  CHECK(chain.acceptance_rate() > 0.6);
}

TEST_CASE("circle functional is identically one") {
  ChainConfig c;
  c.steps = 5000;
  c.burn_in = 500;
  for (double beta : {1.0, 2.0, 4.0}) {
    c.beta = beta;
    const BetaEstimate e = estimate_ratio(circle_map(), FourierSymbol::zero(), c);
    CHECK(std::abs(e.mean_log) < 1e-12);
    CHECK(e.ess <= e.samples);
    CHECK_FALSE(e.heavy_tail);
  }
}

TEST_CASE("beta = 2 estimate matches the determinant") {
  ChainConfig c;
  c.n = 3;
  c.steps = 100000;
  c.burn_in = 10000;
  c.seed = 5;
  const ExteriorMap m = q_curve(0.5);
  const BetaEstimate e = estimate_ratio(m, FourierSymbol::zero(), c);
  const double ref = log_det_Dn(m, FourierSymbol::zero(), 3).log_Dn.real() - 3 * std::log(kTwoPi);
  CHECK(e.std_error > 0.0);
  CHECK(e.ess <= static_cast<double>(c.steps - c.burn_in));
  CHECK(e.acceptance_rate > 0.0);
  CHECK(e.acceptance_rate < 1.0);
  CHECK(std::abs(e.mean_log - ref) < 4 * e.std_error);
}

TEST_CASE("seed batches are deterministic and merge") {
  ChainConfig c;
  c.n = 2;
  c.steps = 4000;
  c.burn_in = 400;
  const std::vector<std::uint64_t> seeds = {1, 2, 3, 4};
  const auto a = estimate_ratio_seeds(q_curve(0.5), FourierSymbol::zero(), c, seeds, 16);
  const int saved = worker_count();
  set_worker_count(1);
  const auto b = estimate_ratio_seeds(q_curve(0.5), FourierSymbol::zero(), c, seeds, 16);
  set_worker_count(saved);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].seed == seeds[i]);
    CHECK(a[i].mean_log == b[i].mean_log);
  }
  const BetaEstimate merged = merge_estimates(a);
  CHECK(merged.samples == 4 * 3600);
  CHECK(merged.std_error < a[0].std_error);
  CHECK_THROWS_AS(merge_estimates({}), Error);
  FourierSymbol s = FourierSymbol::sine(1, std::complex<double>(0, 1));
  CHECK_THROWS_AS(estimate_ratio(q_curve(0.5), s, c), Error);
}

TEST_CASE("autocorrelation time") {
  CHECK(integrated_autocorrelation(std::vector<double>(10, 1.0)) == 1.0);
  std::vector<double> ar(20000);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  double x = 0;
  for (auto& v : ar) v = x = 0.9 * x + nd(rng);
  const double tau = integrated_autocorrelation(ar);
  CHECK(tau > 12.0);
  CHECK(tau < 26.0);
}
