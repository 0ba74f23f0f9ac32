#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "szego/error.hpp"
#include "szego/series.hpp"

using namespace szego;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("make_map builds the circle and the q-curve") {
  const ExteriorMap c = make_map(1.0, 0.0, {0.0});
  CHECK(c.is_circle());
  const ExteriorMap q = make_map(1.0, 0.0, {0.5});
  CHECK(q.tail().size() == 1);
  CHECK(q.tail()[0] == cplx(0.5));
}

TEST_CASE("make_map rejects the cusped q-curve and bad capacities") {
  const ErrorCode ec = code_of([] { make_map(1.0, 0.0, {1.0}); });
  CHECK((ec == ErrorCode::CurveSelfIntersects || ec == ErrorCode::DerivativeVanishes));
  CHECK(code_of([] { make_map(0.0, 0.0, {0.0}); }) == ErrorCode::NonPositiveCapacity);
  CHECK(code_of([] { make_map(-2.0, 0.0, {0.0}); }) == ErrorCode::NonPositiveCapacity);
  // z + 0.9 z^-3: phi' vanishes inside, the image loops over itself
  CHECK_THROWS_AS(make_map(1.0, 0.0, {0.0, 0.0, 0.9}), Error);
}

TEST_CASE("q = 0.5 image is a simple ellipse") {
  const ExteriorMap q = make_map(1.0, 0.0, {0.5});
  const auto s = curve_samples(q, 1024);
  for (std::size_t j = 0; j < s.points.size(); ++j) {
    const cplx p = s.points[j];
    CHECK(std::abs(std::pow(p.real() / 1.5, 2) + std::pow(p.imag() / 0.5, 2) - 1.0) < 1e-12);
  }
}

TEST_CASE("eval_map values and domain check") {
  CHECK(std::abs(eval_map(circle_map(), 2.0, 0) - cplx(2.0)) < 1e-15);
  const ExteriorMap q = q_curve(0.5);
  CHECK(std::abs(eval_map(q, 1.0, 0) - cplx(1.5)) < 1e-15);
  CHECK(std::abs(eval_map(q, cplx(0, 1), 1) - cplx(1.5)) < 1e-15);
  CHECK(code_of([&] { eval_map(q, 0.5, 0); }) == ErrorCode::OutsideDomain);
  CHECK_NOTHROW(eval_map(q, 1.0 - 1e-13, 0));
}

TEST_CASE("eval_map derivatives match central differences") {
  for (const auto& name : builtin_map_names()) {
    const ExteriorMap m = builtin_map(name);
    for (cplx z : {cplx(1.3, 0.2), cplx(-0.8, 1.1), cplx(0.0, -2.0)}) {
      for (int d = 0; d < 3; ++d) {
        const double h = 1e-5;
        const cplx fd = (eval_map(m, z + h, d) - eval_map(m, z - h, d)) / (2 * h);
        const cplx ex = eval_map(m, z, d + 1);
        CHECK(std::abs(fd - ex) <= 1e-6 * std::max(1.0, std::abs(ex)));
      }
    }
  }
}

TEST_CASE("curve_samples on the circle are roots of unity") {
  const auto s = curve_samples(circle_map(), 8);
  for (int j = 0; j < 8; ++j) {
    CHECK(std::abs(s.points[j] - std::polar(1.0, kTwoPi * j / 8)) < 1e-15);
    CHECK(s.weights[j] == doctest::Approx(kTwoPi / 8).epsilon(1e-15));
  }
  CHECK(code_of([] { curve_samples(circle_map(), 15); }) == ErrorCode::BadSampleCount);
}

TEST_CASE("curve_samples weights integrate to the arc length") {
  const ExteriorMap q = q_curve(0.5);
  const auto s = curve_samples(q, 1024);
  double len = 0.0;
  for (double w : s.weights) len += w;
  const double ref = oracle::adaptive_integral(
      [](double t) { return std::hypot(1.5 * std::sin(t), 0.5 * std::cos(t)); }, 0.0, 2 * M_PI, 1e-14);
  CHECK(std::abs(len - ref) < 1e-12);
}

TEST_CASE("curve_samples weights are positive and settle under refinement") {
  for (const auto& name : builtin_map_names()) {
    const ExteriorMap m = builtin_map(name);
    double prev = 0.0;
    for (int N : {256, 512, 1024}) {
      const auto s = curve_samples(m, N);
      double len = 0.0;
      for (double w : s.weights) {
        CHECK(w > 0.0);
        len += w;
      }
      if (N > 256) CHECK(std::abs(len - prev) <= 1e-10 * len);
      prev = len;
    }
  }
}

TEST_CASE("dilate_map rescales the tail") {
  const ExteriorMap d = dilate_map(q_curve(0.5), 2.0);
  CHECK(std::abs(d.tail()[0] - cplx(0.125)) < 1e-16);
  CHECK(dilate_map(circle_map(), 2.0).is_circle());
  CHECK(code_of([] { dilate_map(circle_map(), 1.0); }) == ErrorCode::DilationNotGreaterThanOne);
  const ExteriorMap big = dilate_map(builtin_map("skew"), 1e8);
  for (cplx c : big.tail()) CHECK(std::abs(c) < 1e-15);
}

TEST_CASE("dilate_map composes multiplicatively") {
  const ExteriorMap m = builtin_map("skew");
  const ExteriorMap a = dilate_map(dilate_map(m, 1.3), 1.7);
  const ExteriorMap b = dilate_map(m, 1.3 * 1.7);
  CHECK(std::abs(a.phi0() - b.phi0()) < 1e-14);
  for (std::size_t k = 0; k < a.tail().size(); ++k) CHECK(std::abs(a.tail()[k] - b.tail()[k]) < 1e-14);
}

TEST_CASE("laurent_mul small products") {
  const LaurentSeries z = LaurentSeries::monomial(1, 4);
  const LaurentSeries z2 = laurent_mul(z, z);
  CHECK(z2.lead_degree() == 2);
  CHECK(z2.coeff(2) == cplx(1.0));
  CHECK(z2.coeff(1) == cplx{});

  const cplx q(0.3, 0.1);
  LaurentSeries f(1, 4);
  f.set_coeff(1, 1.0);
  f.set_coeff(-1, q);
  const LaurentSeries f2 = laurent_mul(f, f);
  CHECK(std::abs(f2.coeff(2) - 1.0) < 1e-15);
  CHECK(std::abs(f2.coeff(0) - 2.0 * q) < 1e-15);
  CHECK(std::abs(f2.coeff(-2) - q * q) < 1e-15);
  CHECK(f2.coeff(-1) == cplx{});

  CHECK(code_of([] { laurent_mul(LaurentSeries(1, 3), LaurentSeries(1, 4)); }) == ErrorCode::MismatchedTruncation);
}

TEST_CASE("laurent_mul matches a brute-force convolution") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d;
  const int M = 32;
  for (int trial = 0; trial < 5; ++trial) {
    const int la = trial % 3, lb = 2;
    std::vector<cplx> ca(la + M + 1), cb(lb + M + 1);
    for (auto& c : ca) c = cplx(d(rng), d(rng));
    for (auto& c : cb) c = cplx(d(rng), d(rng));
    const LaurentSeries a(la, M, ca), b(lb, M, cb);
    const LaurentSeries p = laurent_mul(a, b);
    const auto full = oracle::convolve(ca, cb);
    for (int deg = la + lb; deg >= -M; --deg) {
      const auto idx = static_cast<std::size_t>(la + lb - deg);
      CHECK(std::abs(p.coeff(deg) - full[idx]) < 1e-12);
    }
    const LaurentSeries pb = laurent_mul(b, a);
    for (int deg = la + lb; deg >= -M; --deg) CHECK(std::abs(p.coeff(deg) - pb.coeff(deg)) < 1e-12);
  }
}

TEST_CASE("laurent_mul is associative within range") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d;
  const int M = 20;
  auto rnd = [&](int lead) {
    std::vector<cplx> c(lead + M + 1);
    for (auto& x : c) x = cplx(d(rng), d(rng));
    return LaurentSeries(lead, M, c);
  };
  const auto a = rnd(1), b = rnd(1), c = rnd(0);
  const auto l = laurent_mul(laurent_mul(a, b), c);
  const auto r = laurent_mul(a, laurent_mul(b, c));
  // coefficients below z^(2-M) see discarded terms
  for (int deg = 2; deg >= 2 - M; --deg) CHECK(std::abs(l.coeff(deg) - r.coeff(deg)) < 1e-10);
}

TEST_CASE("rigid motions keep the curve") {
  const ExteriorMap m = builtin_map("skew");
  const double w = 0.7;
  const ExteriorMap r = rotate_map(m, w);
  for (double th : {0.1, 1.0, 2.5}) {
    const cplx lhs = eval_map(r, std::polar(1.0, th), 0);
    const cplx rhs = std::polar(1.0, w) * eval_map(m, std::polar(1.0, th - w), 0);
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }
  const ExteriorMap t = translate_map(m, cplx(1, 2));
  CHECK(std::abs(eval_map(t, 1.0, 0) - eval_map(m, 1.0, 0) - cplx(1, 2)) < 1e-14);
  const ExteriorMap s = scale_map(m, 3.0);
  CHECK(s.cap() == doctest::Approx(3.0));
  CHECK(std::abs(eval_map(s, 1.0, 0) - 3.0 * eval_map(m, 1.0, 0)) < 1e-13);
}
