#pragma once

#include <Eigen/Dense>
#include <vector>

#include "szego/grunsky.hpp"
#include "szego/series.hpp"

namespace szego {

/// Fourier data of g(phi(e^{i theta})) = a0/2 + sum_k a_k cos k theta + b_k sin k theta.
/// Coefficients beyond K_max are zero.
struct FourierSymbol {
  cplx a0{};
  std::vector<cplx> a;  // a[k-1] = a_k
  std::vector<cplx> b;  // b[k-1] = b_k

  int k_max() const { return static_cast<int>(a.size()); }
  bool is_real() const;
  bool is_zero() const;
  /// Value of the series at theta.
  cplx value(double theta) const;
  /// Copy padded with zero coefficients up to `k` (never truncates).
  FourierSymbol padded(int k) const;

  static FourierSymbol zero(int k_max = 1);
  /// a_k = value for one index k, everything else zero.
  static FourierSymbol cosine(int k, cplx value = 1.0);
  static FourierSymbol sine(int k, cplx value = 1.0);
  static FourierSymbol constant(cplx c);
};

FourierSymbol operator+(const FourierSymbol& x, const FourierSymbol& y);
FourierSymbol operator*(cplx alpha, const FourierSymbol& x);

/// Column (1/2 sqrt(k) a_k)_k stacked over (1/2 sqrt(k) b_k)_k, length 2m.
struct GVector {
  Eigen::VectorXcd entries;
  int m() const { return static_cast<int>(entries.size() / 2); }
};

/// Analysis of theta-grid samples (N a power of two >= 8): K_max = N/2 - 1.
FourierSymbol symbol_from_theta_samples(const std::vector<cplx>& values);

/// Samples of the symbol on the uniform N-grid.
std::vector<cplx> synthesize_theta_samples(const FourierSymbol& sym, int N);

GVector g_vector(const FourierSymbol& sym, int m);

/// Vector built from log|phi'| via the Grunsky diagonals sum_j a_{j,k-j}.
GVector d_vector(const GrunskyTable& table, int m);

double sobolev_half_norm(const FourierSymbol& sym);

/// Symbol transported with the curve under rotate_map(map, omega).
FourierSymbol rotate_symbol(const FourierSymbol& sym, double omega);

}  // namespace szego
