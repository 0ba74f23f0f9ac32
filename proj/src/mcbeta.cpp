#include "szego/mcbeta.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <string>

#include "szego/error.hpp"
#include "szego/kernels.hpp"

namespace szego {

namespace {

constexpr long kTuneWindow = 50;

double wrap(double t) {
  t = std::fmod(t + M_PI, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t - M_PI;
}

}  // namespace

void validate(const ChainConfig& cfg) {
  if (cfg.n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!(cfg.beta > 0.0)) fail(ErrorCode::InvalidArgument, "beta must be positive");
  if (cfg.burn_in < 0 || cfg.steps <= cfg.burn_in) fail(ErrorCode::InvalidArgument, "need steps > burn_in >= 0");
  if (!(cfg.proposal_width > 0.0) || cfg.proposal_width > M_PI) {
    fail(ErrorCode::InvalidArgument, "proposal width must lie in (0, pi]");
  }
}

CircularBetaSampler::CircularBetaSampler(const ChainConfig& cfg)
    : cfg_(cfg), rng_(cfg.seed), theta_(static_cast<std::size_t>(std::max(cfg.n, 0))), width_(cfg.proposal_width) {
  validate(cfg);
  for (int mu = 0; mu < cfg.n; ++mu) theta_[static_cast<std::size_t>(mu)] = -M_PI + kTwoPi * (mu + 0.5) / cfg.n;
}

double CircularBetaSampler::log_pair(double a, double b) const { return std::log(std::abs(2.0 * std::sin(0.5 * (a - b)))); }

void CircularBetaSampler::sweep() {
  std::uniform_real_distribution<double> step(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool tuning = burning_in();
  const std::size_t n = theta_.size();
  for (std::size_t mu = 0; mu < n; ++mu) {
    const double old = theta_[mu];
    const double prop = wrap(old + width_ * step(rng_));
    double delta = 0.0;
    for (std::size_t nu = 0; nu < n; ++nu) {
      if (nu == mu) continue;
      delta += log_pair(prop, theta_[nu]) - log_pair(old, theta_[nu]);
    }
    delta *= cfg_.beta;
    const bool accept = delta >= 0.0 || std::log(unit(rng_)) < delta;
    if (accept) theta_[mu] = prop;
    if (tuning) {
      ++window_tried_;
      window_accepted_ += accept;
    } else {
      ++tried_;
      accepted_ += accept;
    }
  }
  ++done_;
  if (tuning && window_tried_ >= kTuneWindow * static_cast<long>(n)) {
    const double rate = static_cast<double>(window_accepted_) / window_tried_;
    if (rate < 0.3) width_ *= 0.7;
    if (rate > 0.5) width_ = std::min(M_PI, width_ * 1.3);
    window_tried_ = window_accepted_ = 0;
  }
}

double CircularBetaSampler::acceptance_rate() const noexcept {
  if (tried_ > 0) return static_cast<double>(accepted_) / tried_;
  return window_tried_ > 0 ? static_cast<double>(window_accepted_) / window_tried_ : 0.0;
}

std::vector<std::vector<double>> sample_circular_beta(const ChainConfig& cfg) {
  CircularBetaSampler chain(cfg);
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(cfg.steps - cfg.burn_in));
  while (chain.sweeps_done() < cfg.steps) {
    const bool keep = !chain.burning_in();
    chain.sweep();
    if (keep) out.push_back(chain.angles());
  }
  return out;
}

double integrated_autocorrelation(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 2) return 1.0;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  auto autocov = [&](std::size_t t) {
    double s = 0.0;
    for (std::size_t i = 0; i + t < n; ++i) s += (x[i] - mean) * (x[i + t] - mean);
    return s / n;
  };
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) return 1.0;
  double tau = 1.0;
  for (std::size_t t = 1; t < n; ++t) {
    tau += 2.0 * autocov(t) / c0;
    if (static_cast<double>(t) >= 5.0 * tau) break;
  }
  return std::max(tau, 1e-12);
}

BetaEstimate estimate_ratio(const ExteriorMap& map, const FourierSymbol& sym, const ChainConfig& cfg,
                            const GrunskyTable& table) {
  validate(cfg);
  if (!sym.is_real()) fail(ErrorCode::InvalidArgument, "beta Monte Carlo needs a real symbol");
  const int m = table.m;
  const double cap = map.cap();
  const double beta = cfg.beta;

  auto log_functional = [&](const std::vector<double>& theta) {
    Eigen::VectorXcd p = Eigen::VectorXcd::Zero(m);
    double extra = 0.0;
    for (double t : theta) {
      const cplx z = std::polar(1.0, t);
      const cplx w = std::conj(z);
      cplx wk = w;
      for (int k = 0; k < m; ++k) {
        p(k) += wk;
        wk *= w;
      }
      extra += (1.0 - beta / 2.0) * std::log(std::abs(map.evaluate(z, 1)) / cap) + sym.value(t).real();
    }
    const cplx quad = p.transpose() * table.a * p;
    return -(beta / 2.0) * quad.real() + extra;
  };

  CircularBetaSampler chain(cfg);
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(cfg.steps - cfg.burn_in));
  while (chain.sweeps_done() < cfg.steps) {
    const bool keep = !chain.burning_in();
    chain.sweep();
    if (keep) logs.push_back(log_functional(chain.angles()));
  }

  const double shift = *std::max_element(logs.begin(), logs.end());
  std::vector<double> w(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) w[i] = std::exp(logs[i] - shift);
  const double count = static_cast<double>(w.size());
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / count;
  double var = 0.0;
  for (double v : w) var += (v - mean) * (v - mean);
  var /= std::max(1.0, count - 1.0);

  BetaEstimate est;
  est.seed = cfg.seed;
  est.samples = static_cast<long>(w.size());
  est.acceptance_rate = chain.acceptance_rate();
  est.tuned_width = chain.width();
  est.ess = std::min(count, count / integrated_autocorrelation(w));
  est.mean_log = shift + std::log(mean);
  est.std_error = std::sqrt(var / est.ess) / mean;

  std::vector<double> sorted = w;
  const std::size_t top = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(0.001 * count)));
  std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(top), sorted.end(),
                    std::greater<double>());
  const double top_sum = std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(top), 0.0);
  est.heavy_tail = top_sum > 0.5 * mean * count;
  return est;
}

BetaEstimate estimate_ratio(const ExteriorMap& map, const FourierSymbol& sym, const ChainConfig& cfg, int m) {
  if (m < 0) fail(ErrorCode::InvalidArgument, "m must be >= 0");
  const int mm = m == 0 ? auto_truncation(map) : m;
  return estimate_ratio(map, sym, cfg, grunsky_coefficients(map, mm));
}

std::vector<BetaEstimate> estimate_ratio_seeds(const ExteriorMap& map, const FourierSymbol& sym,
                                               const ChainConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                               int m) {
  validate(cfg);
  if (m < 0) fail(ErrorCode::InvalidArgument, "m must be >= 0");
  const GrunskyTable table = grunsky_coefficients(map, m == 0 ? auto_truncation(map) : m);
  std::vector<BetaEstimate> out(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  const long count = static_cast<long>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
  for (long i = 0; i < count; ++i) {
    try {
      ChainConfig c = cfg;
      c.seed = seeds[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = estimate_ratio(map, sym, c, table);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

BetaEstimate merge_estimates(const std::vector<BetaEstimate>& parts) {
  if (parts.empty()) fail(ErrorCode::InvalidArgument, "nothing to merge");
  BetaEstimate out;
  double wsum = 0.0, acc = 0.0;
  for (const auto& p : parts) {
    out.samples += p.samples;
    out.ess += p.ess;
    out.acceptance_rate += p.acceptance_rate / parts.size();
    out.heavy_tail = out.heavy_tail || p.heavy_tail;
    if (!(p.std_error > 0.0)) continue;
    const double w = 1.0 / (p.std_error * p.std_error);
    wsum += w;
    acc += w * p.mean_log;
  }
  if (wsum > 0.0) {
    out.mean_log = acc / wsum;
    out.std_error = std::sqrt(1.0 / wsum);
  } else {
    out.mean_log = parts.front().mean_log;
    out.std_error = 0.0;
  }
  out.tuned_width = parts.front().tuned_width;
  out.seed = parts.front().seed;
  return out;
}

}  // namespace szego
