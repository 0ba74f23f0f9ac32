#include "oracles.hpp"

#include <cmath>

namespace oracle {

double q_curve_energy(double q) {
  double s = 0.0;
  double q2k = q * q;
  while (q2k >= 1e-16) {
    s += -0.5 * std::log(1.0 - q2k);
    q2k *= q * q;
  }
  return s;
}

double bessel_i(int nu, double x) {
  nu = std::abs(nu);
  double term = std::pow(x / 2.0, nu) / std::tgamma(nu + 1.0);
  double s = term;
  for (int k = 1; k < 200; ++k) {
    term *= (x * x / 4.0) / (k * static_cast<double>(k + nu));
    s += term;
    if (term < 1e-18 * s) break;
  }
  return s;
}

double circle_cosine_log_det(int n, double t) {
  Eigen::MatrixXd T(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) T(j, k) = bessel_i(j - k, 2.0 * t);
  return std::log(T.determinant()) + n * std::log(2.0 * M_PI);
}

double moment_log_det(const std::function<cplx(double)>& curve, const std::function<double(double)>& speed,
                      const std::function<double(double)>& weight, int n, int nodes) {
  using lc = std::complex<long double>;
  std::vector<std::vector<lc>> M(n, std::vector<lc>(n));
  for (int i = 0; i < nodes; ++i) {
    const double th = 2.0 * M_PI * i / nodes;
    const lc z = curve(th);
    const long double w = static_cast<long double>(speed(th)) * weight(th) * (2.0L * M_PIl / nodes);
    std::vector<lc> pw(n);
    pw[0] = 1.0L;
    for (int k = 1; k < n; ++k) pw[k] = pw[k - 1] * z;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) M[j][k] += w * pw[j] * std::conj(pw[k]);
  }
  long double logdet = 0.0L;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(M[r][c]) > std::abs(M[p][c])) p = r;
    std::swap(M[p], M[c]);
    logdet += std::log(std::abs(M[c][c]));
    for (int r = c + 1; r < n; ++r) {
      const lc f = M[r][c] / M[c][c];
      for (int k = c; k < n; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return static_cast<double>(logdet);
}

namespace {
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}
}  // namespace

double adaptive_integral(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4 * fm + fb), tol, 40);
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& B) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
  return svd.singularValues();
}

Eigen::MatrixXcd random_symmetric(int m, double norm, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  Eigen::MatrixXcd A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = cplx(d(rng), d(rng));
  Eigen::MatrixXcd S = 0.5 * (A + A.transpose());
  return S * (norm / singular_values(S)(0));
}

std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Eigen::MatrixXcd unit_upper(int n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) T(i, j) = cplx(u(rng), u(rng));
  return T;
}

}  // namespace oracle
