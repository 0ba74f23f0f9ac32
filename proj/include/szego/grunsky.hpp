#pragma once

#include <Eigen/Dense>
#include <string>

#include "szego/series.hpp"

namespace szego {

/// Truncated Grunsky coefficients a_{kl}, 1 <= k,l <= m (0-based storage).
struct GrunskyTable {
  int m = 0;
  Eigen::MatrixXcd a;
  /// max |a_kl - a_lk| / max |a_kl| before symmetrization.
  double asymmetry = 0.0;
  std::string source_map_id;
};

struct OperatorPair {
  Eigen::MatrixXcd B;  // b_kl = sqrt(k l) a_kl
  Eigen::MatrixXd K;   // [[Re B, Im B], [Im B, -Re B]]
  int m() const { return static_cast<int>(B.rows()); }
};

struct TakagiFactor {
  Eigen::MatrixXcd U;
  Eigen::VectorXd lambda;  // nonincreasing, >= 0
  double residual = 0.0;   // max-norm of B - U diag(lambda) U^T
  double unitarity_defect = 0.0;  // max-norm of U U^H - I
};

struct SpectralReport {
  int m = 0;
  double log_det_IplusK = 0.0;
  double log_det_IminusBstarB = 0.0;
  double szego_energy = 0.0;
  double hs_norm_sq = 0.0;
  double delta_m_tail = 0.0;
  double kappa_hat = 0.0;
};

/// Working series order used by the Faber route, and the smallest order it
/// accepts: coefficients of z^-l, l <= m, survive m products with phi only if
/// the series keeps a margin of 2m below them.
int default_faber_order(const ExteriorMap& map, int m);

/// Faber route: builds Phi_k(phi(z)) = z^k + k sum_l a_kl z^-l by
/// unit-triangular elimination in Laurent arithmetic. `series_order` 0 picks
/// default_faber_order; smaller than 3m raises TruncationTooSmall.
GrunskyTable grunsky_coefficients(const ExteriorMap& map, int m, int series_order = 0);

/// Cross-check route: 2-D DFT of log((phi(zeta)-phi(z))/(zeta-z)) sampled on
/// the torus |zeta| = |z| = radius. `grid` 0 picks the smallest power of two
/// >= 8m.
GrunskyTable grunsky_coefficients_sampled(const ExteriorMap& map, int m, double radius, int grid = 0);

OperatorPair operators(const GrunskyTable& table);

/// B = U diag(lambda) U^T for complex symmetric B, computed from the real
/// symmetric eigenproblem of K = [[Re B, Im B], [Im B, -Re B]].
TakagiFactor takagi(const Eigen::MatrixXcd& B);

/// Assembles the K matrix of a complex symmetric B.
Eigen::MatrixXd k_matrix(const Eigen::MatrixXcd& B);

inline constexpr double kDeltaEpsilon = 0.1;

SpectralReport spectral_report(const OperatorPair& pair, const ExteriorMap& map);

/// a_kl r^-(k+l): the table of the dilated curve.
GrunskyTable dilated_table(const GrunskyTable& table, double r);

/// Doubles m from `start` until szego_energy changes by less than `tol`, or
/// m reaches `max_m`. Returns the final m.
int auto_truncation(const ExteriorMap& map, int start = 8, double tol = 1e-9, int max_m = 512);

}  // namespace szego
