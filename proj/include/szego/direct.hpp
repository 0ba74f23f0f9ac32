#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <vector>

#include "szego/series.hpp"
#include "szego/symbol.hpp"

namespace szego {

enum class DetMethod { qr_positive, lu_general };
std::string_view to_string(DetMethod m);
DetMethod det_method_from_string(std::string_view s);

/// N = 0 requests automatic refinement.
inline constexpr int kAutoNodes = 0;
inline constexpr int kMaxNodes = 1 << 20;
inline constexpr double kRefinementTol = 1e-8;
inline constexpr double kCondLimit = 1e12;

struct DirectResult {
  int n = 0;
  int N_nodes = 0;
  /// -inf real part when zero_determinant is set.
  cplx log_Dn{};
  DetMethod method = DetMethod::qr_positive;
  /// qr_positive: (max/min norm of the monic orthogonal polynomials)^2, a
  /// lower bound for the condition of the monomial moment matrix.
  /// lu_general: 1/rcond of the twisted Gram matrix in the orthonormal basis.
  double cond_estimate = 1.0;
  bool converged = false;
  /// |log D_n(N) - log D_n(2N)|.
  double refinement_delta = 0.0;
  bool zero_determinant = false;
};

struct EnergyCurve {
  int n = 0;
  std::vector<double> r_grid;
  std::vector<double> values;
  /// The r -> 1+ limit is reported as the value at the smallest r, flagged
  /// with whether the values still increase toward r = 1.
  double value_at_smallest_r = 0.0;
  bool increasing_toward_one = false;
};

struct ConvexityReport {
  int n = 0;
  double tol = 1e-4;
  std::vector<double> r_interior;
  /// r E'' + E' at the interior nodes, from central differences in log r.
  std::vector<double> estimates;
  std::vector<bool> flagged;
  bool all_ok = true;
  double r_largest = 0.0;
  double E_at_largest_r = 0.0;
};

/// log D_n[e^g] = log det( int zeta^j conj(zeta)^k e^g |d zeta| )_{j,k<n}
/// by uniform-theta trapezoidal quadrature on N nodes.
DirectResult log_det_Dn(const ExteriorMap& map, const FourierSymbol& sym, int n, int N = kAutoNodes);

/// Same determinant with the monomial basis replaced by zeta^j -> sum_i mix(i, j) zeta^i
/// (mix unit upper triangular), from a Householder QR of the explicit weighted
/// array (real symbols) or the explicit Gram matrix and LU (complex).
cplx log_det_in_basis(const ExteriorMap& map, const FourierSymbol& sym, int n, int N, const Eigen::MatrixXcd& mix);

/// cap^{-2n-1} D_{n+1} / D_n.
cplx quotient_ratio(const ExteriorMap& map, const FourierSymbol& sym, int n);

/// E_n(r) = log D_n[1](gamma_r) - n log 2pi - n^2 log cap over r_grid.
EnergyCurve finite_energy(const ExteriorMap& map, int n, const std::vector<double>& r_grid);

/// Andreief form (1/n!) int prod_{mu != nu} |zeta_mu - zeta_nu| prod e^g |d zeta|
/// by the n-fold trapezoidal rule on `grid` nodes; n in {1, 2, 3}, real g.
double bruteforce_Dn(const ExteriorMap& map, const FourierSymbol& sym, int n, int grid);

ConvexityReport convexity_check(const EnergyCurve& curve, double tol = 1e-4);

/// r_lo * (r_hi/r_lo)^(i/(count-1)).
std::vector<double> log_spaced(double r_lo, double r_hi, int count);

}  // namespace szego
