#include "szego/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "szego/error.hpp"

namespace szego {

int worker_count() { return omp_get_max_threads(); }

void set_worker_count(int workers) {
  if (workers < 1) fail(ErrorCode::InvalidArgument, "worker count must be positive");
  omp_set_num_threads(workers);
}

int configure_workers_from_env() {
  if (const char* env = std::getenv("SZEGO_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value < 1) {
      fail(ErrorCode::InvalidArgument, std::string("SZEGO_THREADS must be a positive integer, got '") + env + "'");
    }
    set_worker_count(static_cast<int>(value));
  }
  return worker_count();
}

namespace {

void check_tuple_args(std::span<const cplx> points, std::span<const double> weights, int n) {
  if (points.size() != weights.size()) fail(ErrorCode::BadLength, "points/weights size mismatch");
  if (n < 1 || n > 3) fail(ErrorCode::InvalidArgument, "tuple sums are implemented for n = 1, 2, 3");
}

cplx grunsky_log_entry(const ExteriorMap& map, cplx zeta, cplx z, bool diagonal) {
  const cplx ratio = diagonal ? map.evaluate(z, 1) / map.cap()
                              : (map.evaluate(zeta, 0) - map.evaluate(z, 0)) / (map.cap() * (zeta - z));
  return std::log(ratio);
}

}  // namespace

namespace kernels {

double coulomb_tuple_sum(std::span<const cplx> points, std::span<const double> weights, int n) {
  check_tuple_args(points, weights, n);
  const long N = static_cast<long>(points.size());
  if (n == 1) {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
  // Squared distances; the integrand is symmetric and vanishes on
  // coincident nodes, so the ordered sum over tuples divided by n! equals the
  // sum over strictly increasing index tuples.
  Eigen::MatrixXd dist2(N, N);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < N; ++i) {
    for (long j = 0; j < N; ++j) dist2(i, j) = std::norm(points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)]);
  }
  std::vector<double> row_sum(static_cast<std::size_t>(N), 0.0);
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < N; ++i) {
    double acc = 0.0;
    for (long j = i + 1; j < N; ++j) {
      double inner = 1.0;
      if (n == 3) {
        inner = 0.0;
        for (long k = j + 1; k < N; ++k) inner += weights[static_cast<std::size_t>(k)] * dist2(i, k) * dist2(j, k);
      }
      acc += weights[static_cast<std::size_t>(j)] * dist2(i, j) * inner;
    }
    row_sum[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(i)] * acc;
  }
  double total = 0.0;
  for (double s : row_sum) total += s;
  return total;
}

Eigen::MatrixXcd grunsky_log_grid(const ExteriorMap& map, double radius, int N) {
  std::vector<cplx> nodes(static_cast<std::size_t>(N));
  for (int p = 0; p < N; ++p) nodes[static_cast<std::size_t>(p)] = std::polar(radius, kTwoPi * p / N);
  Eigen::MatrixXcd out(N, N);
#pragma omp parallel for schedule(static)
  for (int p = 0; p < N; ++p) {
    for (int q = 0; q < N; ++q) {
      out(p, q) = grunsky_log_entry(map, nodes[static_cast<std::size_t>(p)], nodes[static_cast<std::size_t>(q)], p == q);
    }
  }
  return out;
}

Eigen::MatrixXcd twisted_gram(const Eigen::MatrixXcd& basis, std::span<const cplx> phase) {
  const Eigen::Index N = basis.rows();
  const Eigen::Index n = basis.cols();
  if (static_cast<Eigen::Index>(phase.size()) != N) fail(ErrorCode::BadLength, "phase length must match basis rows");
  Eigen::MatrixXcd out(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index l = 0; l < n; ++l) {
    Eigen::VectorXcd twisted(N);
    for (Eigen::Index i = 0; i < N; ++i) twisted(i) = phase[static_cast<std::size_t>(i)] * basis(i, l);
    for (Eigen::Index p = 0; p < n; ++p) {
      cplx acc{};
      for (Eigen::Index i = 0; i < N; ++i) acc += twisted(i) * std::conj(basis(i, p));
      out(l, p) = acc;
    }
  }
  return out;
}

namespace serial {

double coulomb_tuple_sum(std::span<const cplx> points, std::span<const double> weights, int n) {
  check_tuple_args(points, weights, n);
  const std::size_t N = points.size();
  double total = 0.0;
  if (n == 1) {
    for (double w : weights) total += w;
    return total;
  }
  if (n == 2) {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        total += weights[i] * weights[j] * std::norm(points[i] - points[j]);
    return total / 2.0;
  }
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      for (std::size_t k = 0; k < N; ++k)
        total += weights[i] * weights[j] * weights[k] * std::norm(points[i] - points[j]) *
                 std::norm(points[i] - points[k]) * std::norm(points[j] - points[k]);
  return total / 6.0;
}

Eigen::MatrixXcd grunsky_log_grid(const ExteriorMap& map, double radius, int N) {
  Eigen::MatrixXcd out(N, N);
  for (int p = 0; p < N; ++p) {
    for (int q = 0; q < N; ++q) {
      out(p, q) = grunsky_log_entry(map, std::polar(radius, kTwoPi * p / N), std::polar(radius, kTwoPi * q / N), p == q);
    }
  }
  return out;
}

Eigen::MatrixXcd twisted_gram(const Eigen::MatrixXcd& basis, std::span<const cplx> phase) {
  const Eigen::Index N = basis.rows();
  const Eigen::Index n = basis.cols();
  if (static_cast<Eigen::Index>(phase.size()) != N) fail(ErrorCode::BadLength, "phase length must match basis rows");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index i = 0; i < N; ++i)
        out(l, p) += phase[static_cast<std::size_t>(i)] * basis(i, l) * std::conj(basis(i, p));
  return out;
}

}  // namespace serial
}  // namespace kernels
}  // namespace szego
