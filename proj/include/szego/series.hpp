#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace szego {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Truncated Laurent series  sum_{d=-M}^{lead} c_d z^d.
///
/// Coefficients are stored from the lead degree downward, so
/// `coeffs()[i]` multiplies z^(lead_degree - i). Everything below z^-M is
/// discarded by every operation, and all operands of a binary operation must
/// share the same truncation order M.
class LaurentSeries {
 public:
  LaurentSeries(int lead_degree, int trunc_order);
  LaurentSeries(int lead_degree, int trunc_order, std::vector<cplx> coeffs);

  static LaurentSeries monomial(int degree, int trunc_order, cplx value = 1.0);

  int lead_degree() const noexcept { return lead_; }
  int trunc_order() const noexcept { return trunc_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of z^degree; zero outside the stored range.
  cplx coeff(int degree) const noexcept;
  void set_coeff(int degree, cplx value);

  /// this += alpha * other. `other` may not have a higher lead degree.
  LaurentSeries& add_scaled(cplx alpha, const LaurentSeries& other);

 private:
  int lead_;
  int trunc_;
  std::vector<cplx> coeffs_;
};

/// Cauchy product truncated at z^-M.
LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b);

/// Exterior mapping function  cap * (z + phi0 + sum_k tail[k-1] z^-k).
///
/// Only constructed through make_map (validated) or through the rigid-motion
/// and dilation helpers below, which map simple curves to simple curves.
class ExteriorMap {
 public:
  double cap() const noexcept { return cap_; }
  cplx phi0() const noexcept { return phi0_; }
  /// tail()[k-1] is phi_{-k}.
  const std::vector<cplx>& tail() const noexcept { return tail_; }
  int order() const noexcept { return static_cast<int>(tail_.size()); }

  /// cap * phi^(deriv)(z) without the domain check.
  cplx evaluate(cplx z, int deriv_order) const;

  /// phi(z) (no cap factor) as a Laurent series truncated at z^-trunc_order.
  LaurentSeries normalized_series(int trunc_order) const;

  bool is_circle() const noexcept;

  /// Stable textual identity of the coefficients, used to tag derived tables.
  std::string fingerprint() const;

 private:
  friend ExteriorMap make_map(double, cplx, std::vector<cplx>);
  friend ExteriorMap make_map_unchecked(double, cplx, std::vector<cplx>);
  ExteriorMap(double cap, cplx phi0, std::vector<cplx> tail)
      : cap_(cap), phi0_(phi0), tail_(std::move(tail)) {}

  double cap_;
  cplx phi0_;
  std::vector<cplx> tail_;
};

/// Number of grid points used by the heuristic univalence checks.
inline constexpr int kUnivalenceGrid = 4096;
inline constexpr double kSelfIntersectionTol = 1e-9;

/// Validated constructor. Throws NonPositiveCapacity, DerivativeVanishes or
/// CurveSelfIntersects. An empty tail is padded to a single zero coefficient.
ExteriorMap make_map(double cap, cplx phi0, std::vector<cplx> tail);

/// Skips the grid checks; for maps known to be univalent by construction.
ExteriorMap make_map_unchecked(double cap, cplx phi0, std::vector<cplx> tail);

cplx eval_map(const ExteriorMap& map, cplx z, int deriv_order);

struct CurveSamples {
  std::vector<double> theta;
  std::vector<cplx> unit;     // e^{i theta_j}
  std::vector<cplx> points;   // cap * phi(e^{i theta_j})
  std::vector<double> weights;  // cap * |phi'(e^{i theta_j})| * 2pi/N
};

/// Trapezoidal samples of the curve on the uniform theta grid; N must be a
/// power of two (>= 8).
CurveSamples curve_samples(const ExteriorMap& map, int N);

ExteriorMap dilate_map(const ExteriorMap& map, double r);

/// e^{i omega} * curve, reparametrized so the result is again normalized.
ExteriorMap rotate_map(const ExteriorMap& map, double omega);
ExteriorMap translate_map(const ExteriorMap& map, cplx shift);
ExteriorMap scale_map(const ExteriorMap& map, double factor);
/// Same curve with cap set to 1.
ExteriorMap normalized(const ExteriorMap& map);

/// The q-curve z + q/z (an ellipse for real q).
ExteriorMap q_curve(cplx q, double cap = 1.0);
ExteriorMap circle_map(double cap = 1.0);

/// Built-in analytic curves: "circle", "ellipse" (q = 0.5), "trefoil"
/// (z + 0.25 z^-2) and "skew" (mixed complex tail).
ExteriorMap builtin_map(std::string_view name);
std::vector<std::string> builtin_map_names();

bool is_power_of_two(long n);

}  // namespace szego
