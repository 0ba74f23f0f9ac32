#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "szego/grunsky.hpp"
#include "szego/symbol.hpp"

namespace szego {

struct ChainConfig {
  int n = 4;
  double beta = 2.0;
  long steps = 200000;   // sweeps, burn-in included
  long burn_in = 20000;
  double proposal_width = 1.0;  // radians, in (0, pi]
  std::uint64_t seed = 1;
};

void validate(const ChainConfig& cfg);

struct BetaEstimate {
  std::uint64_t seed = 0;
  /// log of the chain average of the functional
  double mean_log = 0.0;
  /// delta-method standard error of mean_log
  double std_error = 0.0;
  double acceptance_rate = 0.0;
  double ess = 0.0;
  long samples = 0;
  double tuned_width = 0.0;
  /// top 0.1% of the weights carry more than half of the mean
  bool heavy_tail = false;
};

/// Metropolis chain for the circular beta ensemble
/// prod_{mu<nu} |e^{i theta_mu} - e^{i theta_nu}|^beta on [-pi, pi)^n.
/// One step is a systematic sweep of wrapped-uniform single-site moves; the
/// proposal width is tuned toward acceptance in [0.2, 0.6] during burn-in only.
class CircularBetaSampler {
 public:
  explicit CircularBetaSampler(const ChainConfig& cfg);

  void sweep();
  const std::vector<double>& angles() const noexcept { return theta_; }
  bool burning_in() const noexcept { return done_ < cfg_.burn_in; }
  long sweeps_done() const noexcept { return done_; }
  /// Acceptance over the post-burn-in sweeps (over all sweeps while burning in).
  double acceptance_rate() const noexcept;
  double width() const noexcept { return width_; }

 private:
  double log_pair(double a, double b) const;

  ChainConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<double> theta_;
  double width_;
  long done_ = 0;
  long tried_ = 0, accepted_ = 0;
  long window_tried_ = 0, window_accepted_ = 0;
};

/// All post-burn-in configurations of one chain.
std::vector<std::vector<double>> sample_circular_beta(const ChainConfig& cfg);

/// Chain average of exp(-(beta/2) Re sum_{k,l<=m} a_kl p_k p_l
/// + (1 - beta/2) sum log|phi'| + sum g), p_k = sum_mu e^{-i k theta_mu}.
/// m = 0 picks the truncation by auto_truncation. Real symbols only.
BetaEstimate estimate_ratio(const ExteriorMap& map, const FourierSymbol& sym, const ChainConfig& cfg, int m = 0);
BetaEstimate estimate_ratio(const ExteriorMap& map, const FourierSymbol& sym, const ChainConfig& cfg,
                            const GrunskyTable& table);

/// Independent chains, one per seed (cfg.seed ignored), run concurrently.
std::vector<BetaEstimate> estimate_ratio_seeds(const ExteriorMap& map, const FourierSymbol& sym,
                                               const ChainConfig& cfg, const std::vector<std::uint64_t>& seeds,
                                               int m = 0);

/// Inverse-variance weighted combination of independent estimates.
BetaEstimate merge_estimates(const std::vector<BetaEstimate>& parts);

/// Sokal-windowed integrated autocorrelation time (window c = 5).
double integrated_autocorrelation(const std::vector<double>& x);

}  // namespace szego
