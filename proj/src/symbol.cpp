#include "szego/symbol.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "szego/error.hpp"
#include "fftw_guard.hpp"

namespace szego {

bool FourierSymbol::is_real() const {
  auto real = [](cplx c) { return c.imag() == 0.0; };
  return real(a0) && std::all_of(a.begin(), a.end(), real) && std::all_of(b.begin(), b.end(), real);
}

bool FourierSymbol::is_zero() const {
  auto zero = [](cplx c) { return c == cplx{}; };
  return zero(a0) && std::all_of(a.begin(), a.end(), zero) && std::all_of(b.begin(), b.end(), zero);
}

cplx FourierSymbol::value(double theta) const {
  cplx v = 0.5 * a0;
  for (int k = 1; k <= k_max(); ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    v += a[i] * std::cos(k * theta) + b[i] * std::sin(k * theta);
  }
  return v;
}

FourierSymbol FourierSymbol::padded(int k) const {
  FourierSymbol s = *this;
  if (k > k_max()) {
    s.a.resize(static_cast<std::size_t>(k), cplx{});
    s.b.resize(static_cast<std::size_t>(k), cplx{});
  }
  return s;
}

FourierSymbol FourierSymbol::zero(int k_max) {
  FourierSymbol s;
  s.a.assign(static_cast<std::size_t>(std::max(k_max, 1)), cplx{});
  s.b = s.a;
  return s;
}

FourierSymbol FourierSymbol::cosine(int k, cplx value) {
  FourierSymbol s = zero(k);
  s.a[static_cast<std::size_t>(k - 1)] = value;
  return s;
}

FourierSymbol FourierSymbol::sine(int k, cplx value) {
  FourierSymbol s = zero(k);
  s.b[static_cast<std::size_t>(k - 1)] = value;
  return s;
}

FourierSymbol FourierSymbol::constant(cplx c) {
  FourierSymbol s = zero(1);
  s.a0 = 2.0 * c;
  return s;
}

FourierSymbol operator+(const FourierSymbol& x, const FourierSymbol& y) {
  const int k = std::max(x.k_max(), y.k_max());
  FourierSymbol s = x.padded(k);
  const FourierSymbol t = y.padded(k);
  s.a0 += t.a0;
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    s.a[i] += t.a[i];
    s.b[i] += t.b[i];
  }
  return s;
}

FourierSymbol operator*(cplx alpha, const FourierSymbol& x) {
  FourierSymbol s = x;
  s.a0 *= alpha;
  for (auto& c : s.a) c *= alpha;
  for (auto& c : s.b) c *= alpha;
  return s;
}

FourierSymbol symbol_from_theta_samples(const std::vector<cplx>& values) {
  const int N = static_cast<int>(values.size());
  if (N < 8 || !is_power_of_two(N)) {
    fail(ErrorCode::BadLength, "theta samples need a power-of-two length >= 8, got " + std::to_string(N));
  }
  std::vector<cplx> coef(values);
  {
    fftw_plan plan;
    auto* data = reinterpret_cast<fftw_complex*>(coef.data());
    {
      std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
      plan = fftw_plan_dft_1d(N, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  // coef[k] / N is the coefficient of e^{i k theta}; index N - k holds -k.
  FourierSymbol s;
  const double inv = 1.0 / N;
  s.a0 = 2.0 * coef[0] * inv;
  const int kmax = N / 2 - 1;
  s.a.resize(static_cast<std::size_t>(kmax));
  s.b.resize(static_cast<std::size_t>(kmax));
  const cplx I(0.0, 1.0);
  for (int k = 1; k <= kmax; ++k) {
    const cplx cp = coef[static_cast<std::size_t>(k)] * inv;
    const cplx cm = coef[static_cast<std::size_t>(N - k)] * inv;
    s.a[static_cast<std::size_t>(k - 1)] = cp + cm;
    s.b[static_cast<std::size_t>(k - 1)] = I * (cp - cm);
  }
  return s;
}

std::vector<cplx> synthesize_theta_samples(const FourierSymbol& sym, int N) {
  if (N < 1) fail(ErrorCode::BadLength, "sample count must be positive");
  // Coefficients folded modulo N, then one inverse DFT: exact grid values
  // even when N <= 2 K_max.
  std::vector<cplx> buf(static_cast<std::size_t>(N), cplx{});
  const cplx I(0.0, 1.0);
  buf[0] += 0.5 * sym.a0;
  for (int k = 1; k <= sym.k_max(); ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    buf[static_cast<std::size_t>(k % N)] += 0.5 * (sym.a[i] - I * sym.b[i]);
    buf[static_cast<std::size_t>((N - k % N) % N)] += 0.5 * (sym.a[i] + I * sym.b[i]);
  }
  fftw_plan plan;
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft_1d(N, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
  fftw_destroy_plan(plan);
  return buf;
}

GVector g_vector(const FourierSymbol& sym, int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  if (m > sym.k_max()) {
    fail(ErrorCode::TruncationExceedsSymbol,
         "m = " + std::to_string(m) + " exceeds symbol truncation " + std::to_string(sym.k_max()));
  }
  GVector g;
  g.entries.resize(2 * m);
  for (int k = 1; k <= m; ++k) {
    const double w = 0.5 * std::sqrt(static_cast<double>(k));
    g.entries(k - 1) = w * sym.a[static_cast<std::size_t>(k - 1)];
    g.entries(m + k - 1) = w * sym.b[static_cast<std::size_t>(k - 1)];
  }
  return g;
}

GVector d_vector(const GrunskyTable& table, int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
  if (m > table.m) {
    fail(ErrorCode::TruncationExceedsTable,
         "m = " + std::to_string(m) + " exceeds table size " + std::to_string(table.m));
  }
  GVector d;
  d.entries = Eigen::VectorXcd::Zero(2 * m);
  for (int k = 2; k <= m; ++k) {
    cplx s{};
    for (int j = 1; j <= k - 1; ++j) s += table.a(j - 1, k - j - 1);
    const double w = 0.5 * std::sqrt(static_cast<double>(k));
    d.entries(k - 1) = w * s.real();
    d.entries(m + k - 1) = w * s.imag();
  }
  return d;
}

double sobolev_half_norm(const FourierSymbol& sym) {
  double s = 0.0;
  for (int k = 1; k <= sym.k_max(); ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    s += k * (std::norm(sym.a[i]) + std::norm(sym.b[i]));
  }
  return s;
}

FourierSymbol rotate_symbol(const FourierSymbol& sym, double omega) {
  FourierSymbol out = sym;
  for (int k = 1; k <= sym.k_max(); ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    const double c = std::cos(k * omega);
    const double s = std::sin(k * omega);
    out.a[i] = sym.a[i] * c - sym.b[i] * s;
    out.b[i] = sym.a[i] * s + sym.b[i] * c;
  }
  return out;
}

}  // namespace szego
