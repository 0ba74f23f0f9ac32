#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "szego/error.hpp"
#include "szego/grunsky.hpp"

using namespace szego;

namespace {

double max_abs(const Eigen::MatrixXcd& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("circle table is zero") {
  for (int m : {1, 4, 9}) {
    const GrunskyTable t = grunsky_coefficients(circle_map(), m);
    CHECK(t.a.cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(max_abs(grunsky_coefficients_sampled(circle_map(), 6, 1.5).a) < 1e-12);
}

TEST_CASE("q-curve table is diagonal q^k / k") {
  for (double q : {0.5, 0.3, -0.7}) {
    const GrunskyTable t = grunsky_coefficients(q_curve(q), 8);
    for (int k = 1; k <= 8; ++k)
      for (int l = 1; l <= 8; ++l) {
        const double ref = k == l ? std::pow(q, k) / k : 0.0;
        CHECK(std::abs(t.a(k - 1, l - 1) - ref) < 1e-14);
      }
  }
}

TEST_CASE("complex q keeps the diagonal closed form") {
  const cplx q(0.2, 0.4);
  const GrunskyTable t = grunsky_coefficients(q_curve(q), 6);
  for (int k = 1; k <= 6; ++k) CHECK(std::abs(t.a(k - 1, k - 1) - std::pow(q, k) / static_cast<double>(k)) < 1e-14);
}

TEST_CASE("translation leaves the table unchanged") {
  const ExteriorMap m = builtin_map("skew");
  const GrunskyTable a = grunsky_coefficients(m, 10);
  const GrunskyTable b = grunsky_coefficients(translate_map(m, cplx(1, 2)), 10);
  CHECK(max_abs(a.a - b.a) < 1e-12);
}

TEST_CASE("Faber order below 3m is refused") {
  CHECK_THROWS_AS(grunsky_coefficients(q_curve(0.5), 8, 20), Error);
  try {
    grunsky_coefficients(q_curve(0.5), 8, 20);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationTooSmall);
  }
  CHECK_NOTHROW(grunsky_coefficients(q_curve(0.5), 8, 24));
}

TEST_CASE("asymmetry before symmetrization is tiny on built-in maps") {
  for (const auto& name : builtin_map_names()) {
    const GrunskyTable t = grunsky_coefficients(builtin_map(name), 16);
    CHECK(t.asymmetry <= 1e-10);
    CHECK(max_abs(t.a - t.a.transpose()) == 0.0);
  }
}

TEST_CASE("sampled route agrees with the Faber route") {
  for (const auto& name : builtin_map_names()) {
    const ExteriorMap m = builtin_map(name);
    const GrunskyTable f = grunsky_coefficients(m, 8);
    const GrunskyTable s = grunsky_coefficients_sampled(m, 8, 1.25);
    CHECK(max_abs(f.a - s.a) <= 1e-8);
  }
  const GrunskyTable f = grunsky_coefficients(q_curve(0.5), 8);
  const GrunskyTable s2 = grunsky_coefficients_sampled(q_curve(0.5), 8, 2.0);
  CHECK(max_abs(f.a - s2.a) <= 1e-8);
}

TEST_CASE("sampled route detects aliasing near the unit circle") {
  try {
    grunsky_coefficients_sampled(q_curve(0.95), 8, 1.001, 64);
    FAIL("expected AliasingDetected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AliasingDetected);
  }
}

TEST_CASE("operators assemble B and K blocks") {
  const GrunskyTable t = grunsky_coefficients(q_curve(0.5), 5);
  const OperatorPair p = operators(t);
  for (int k = 1; k <= 5; ++k) CHECK(std::abs(p.B(k - 1, k - 1) - std::pow(0.5, k)) < 1e-15);
  CHECK(p.K.rows() == 10);
  CHECK((p.K - p.K.transpose()).cwiseAbs().maxCoeff() == 0.0);

  GrunskyTable im;
  im.m = 3;
  im.a = Eigen::MatrixXcd::Zero(3, 3);
  for (int k = 1; k <= 3; ++k) im.a(k - 1, k - 1) = cplx(0, std::pow(0.5, k) / k);
  const OperatorPair pi = operators(im);
  CHECK(pi.K.topLeftCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);
  CHECK(pi.K.bottomRightCorner(3, 3).cwiseAbs().maxCoeff() == 0.0);
  CHECK(pi.K(0, 3) == doctest::Approx(0.5));
}

TEST_CASE("takagi on small closed forms") {
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2, 2);
  D(0, 0) = 0.5;
  D(1, 1) = 0.25;
  const TakagiFactor a = takagi(D);
  CHECK(a.lambda(0) == doctest::Approx(0.5));
  CHECK(a.lambda(1) == doctest::Approx(0.25));
  CHECK(a.residual < 1e-12);

  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(2, 2);
  X(0, 1) = X(1, 0) = 0.3;
  const TakagiFactor b = takagi(X);
  CHECK(std::abs(b.lambda(0) - 0.3) < 1e-12);
  CHECK(std::abs(b.lambda(1) - 0.3) < 1e-12);
  CHECK(b.residual <= 1e-10);
  CHECK(b.unitarity_defect <= 1e-10);
}

TEST_CASE("takagi on random symmetric matrices matches an SVD") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXcd B = oracle::random_symmetric(12, 0.9, rng);
    const TakagiFactor t = takagi(B);
    CHECK(t.residual <= 1e-9);
    CHECK(t.unitarity_defect <= 1e-10);
    const Eigen::VectorXd sv = oracle::singular_values(B);
    CHECK((sv - t.lambda).cwiseAbs().maxCoeff() <= 1e-9);
    for (int k = 1; k < 12; ++k) CHECK(t.lambda(k) <= t.lambda(k - 1));
  }
}

TEST_CASE("takagi handles degenerate and zero blocks") {
  const TakagiFactor z = takagi(Eigen::MatrixXcd::Zero(4, 4));
  CHECK(z.lambda.cwiseAbs().maxCoeff() == 0.0);
  CHECK(z.unitarity_defect < 1e-12);
  std::mt19937_64 rng(5);
  Eigen::MatrixXcd B = oracle::random_symmetric(3, 0.5, rng);
  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(6, 6);
  big.topLeftCorner(3, 3) = B;
  big.bottomRightCorner(3, 3) = B;
  const TakagiFactor t = takagi(big);
  CHECK(t.residual <= 1e-9);
  CHECK(t.unitarity_defect <= 1e-10);
}

TEST_CASE("takagi rejects non-symmetric input") {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
  A(0, 1) = 1.0;
  try {
    takagi(A);
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
}

TEST_CASE("spectral report of the q-curve") {
  const ExteriorMap q = q_curve(0.5);
  const SpectralReport r = spectral_report(operators(grunsky_coefficients(q, 32)), q);
  double ref = 0.0;
  for (int k = 1; k <= 32; ++k) ref += std::log(1.0 - std::pow(0.25, k));
  CHECK(std::abs(r.log_det_IminusBstarB - ref) < 1e-12);
  CHECK(std::abs(r.szego_energy - oracle::q_curve_energy(0.5)) < 1e-12);
  CHECK(std::abs(r.szego_energy - 0.186593) < 5e-7);
  CHECK(std::abs(r.kappa_hat - 0.5) < 1e-14);
  CHECK(std::abs(r.log_det_IplusK - r.log_det_IminusBstarB) < 1e-9);
}

TEST_CASE("spectral report of the circle is zero") {
  const SpectralReport r = spectral_report(operators(grunsky_coefficients(circle_map(), 8)), circle_map());
  CHECK(r.log_det_IplusK == 0.0);
  CHECK(r.szego_energy == 0.0);
  CHECK(r.hs_norm_sq == 0.0);
  CHECK(r.kappa_hat == 0.0);
  CHECK(r.delta_m_tail == 0.0);
}

TEST_CASE("determinant identity and eigenvalue pairing on built-in maps") {
  for (const auto& name : builtin_map_names()) {
    const ExteriorMap m = builtin_map(name);
    const OperatorPair p = operators(grunsky_coefficients(m, 16));
    const SpectralReport r = spectral_report(p, m);
    CHECK(std::abs(r.log_det_IplusK - r.log_det_IminusBstarB) <= 1e-9);
    CHECK(r.szego_energy >= 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p.K, Eigen::EigenvaluesOnly);
    const TakagiFactor t = takagi(p.B);
    std::vector<double> pm;
    for (int j = 0; j < 16; ++j) {
      pm.push_back(t.lambda(j));
      pm.push_back(-t.lambda(j));
    }
    std::sort(pm.begin(), pm.end());
    for (int j = 0; j < 32; ++j) CHECK(std::abs(eig.eigenvalues()(j) - pm[j]) <= 1e-9);
  }
}

TEST_CASE("Grunsky inequality on built-in quasicircles") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> d;
  for (const auto& name : builtin_map_names()) {
    const ExteriorMap m = builtin_map(name);
    const OperatorPair p = operators(grunsky_coefficients(m, 16));
    const double kappa = spectral_report(p, m).kappa_hat;
    CHECK(kappa < 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXcd w(16);
      for (int i = 0; i < 16; ++i) w(i) = cplx(d(rng), d(rng));
      w /= w.norm();
      CHECK((p.B * w).norm() <= kappa + 1e-10);
    }
  }
}

TEST_CASE("rotation leaves singular values unchanged") {
  const ExteriorMap m = builtin_map("skew");
  const Eigen::VectorXd a = takagi(operators(grunsky_coefficients(m, 12)).B).lambda;
  const Eigen::VectorXd b = takagi(operators(grunsky_coefficients(rotate_map(m, 1.1), 12)).B).lambda;
  CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("singular value at one is reported") {
  GrunskyTable t;
  t.m = 2;
  t.a = Eigen::MatrixXcd::Zero(2, 2);
  t.a(0, 0) = 1.0;
  try {
    spectral_report(operators(t), circle_map());
    FAIL("expected SingularValueAtOne");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularValueAtOne);
  }
}

TEST_CASE("dilated table") {
  const GrunskyTable t = grunsky_coefficients(q_curve(0.5), 8);
  const GrunskyTable d = dilated_table(t, 2.0);
  const GrunskyTable direct = grunsky_coefficients(dilate_map(q_curve(0.5), 2.0), 8);
  for (int k = 1; k <= 8; ++k) CHECK(std::abs(d.a(k - 1, k - 1) - std::pow(0.125, k) / k) < 1e-15);
  CHECK(max_abs(d.a - direct.a) < 1e-15);
  const GrunskyTable s = grunsky_coefficients(builtin_map("skew"), 8);
  CHECK(max_abs(dilated_table(s, 1e6).a) <= 1e-12 * max_abs(s.a));
  CHECK(max_abs(dilated_table(grunsky_coefficients(circle_map(), 4), 3.0).a) == 0.0);
  CHECK_THROWS_AS(dilated_table(t, 0.9), Error);
}

TEST_CASE("szego energy increases with m and converges on q-curves") {
  const double q = 0.6;
  const ExteriorMap m = q_curve(q);
  double prev = 0.0;
  const double limit = oracle::q_curve_energy(q);
  for (int mm = 1; mm <= 20; ++mm) {
    const double e = spectral_report(operators(grunsky_coefficients(m, mm)), m).szego_energy;
    CHECK(e >= prev - 1e-15);
    CHECK(limit - e <= std::pow(q, 2 * mm) + 1e-15);
    prev = e;
  }
  CHECK(auto_truncation(m) >= 16);
}

TEST_CASE("delta tail decreases with m") {
  const ExteriorMap m = builtin_map("trefoil");
  const double d8 = spectral_report(operators(grunsky_coefficients(m, 8)), m).delta_m_tail;
  const double d32 = spectral_report(operators(grunsky_coefficients(m, 32)), m).delta_m_tail;
  CHECK(d32 < d8);
}
