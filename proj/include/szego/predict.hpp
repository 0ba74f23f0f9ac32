#pragma once

#include "szego/grunsky.hpp"
#include "szego/symbol.hpp"

namespace szego {

/// m = 0 everywhere below means "auto": double m from 8 until the
/// Fredholm terms move by less than 1e-9, capped at 512.
inline constexpr int kAutoM = 0;
inline constexpr int kAutoMStart = 8;
inline constexpr int kAutoMCap = 512;
inline constexpr double kAutoMTol = 1e-9;

/// Term-by-term log of (2pi)^n cap^{n^2} det(I+K)^{-1/2} exp(n a0/2 + g^t (I+K)^{-1} g).
struct PredictionBreakdown {
  int n = 0;
  int m_used = 0;
  double term_cap = 0.0;
  double term_2pi = 0.0;
  cplx term_a0{};
  cplx term_quadform{};
  double term_halflogdet = 0.0;
  cplx total_log{};
  /// delta_m diagnostic of the final table.
  double delta_m = 0.0;
};

/// v^t (I+K)^{-1} v (transpose, not conjugate), real and imaginary parts of v
/// solved separately against the Cholesky factor of I + K.
cplx quadratic_form(const OperatorPair& pair, const GVector& v);

PredictionBreakdown predict_log_Dn(const ExteriorMap& map, const FourierSymbol& sym, int n, int m = kAutoM);
PredictionBreakdown predict_log_Zn(const ExteriorMap& map, int n, int m = kAutoM);

/// Limit of cap^{-2n-1} D_{n+1}/D_n: 2pi exp(a0/2).
cplx predict_quotient(const ExteriorMap& map, const FourierSymbol& sym);

/// Experimental: log of the conjectured beta-ensemble limit
/// -1/2 log det(I+K) + (2/beta) g_b^t (I+K)^{-1} g_b with g_b = (beta/2 - 1) d + g.
cplx predict_beta_log(const ExteriorMap& map, const FourierSymbol& sym, int n, double beta, int m = kAutoM);

/// log Z_{n,beta}(T) = log[(2pi)^n / n! * Gamma(1 + beta n/2) / Gamma(1 + beta/2)^n].
double zn_beta_circle(int n, double beta);

}  // namespace szego
