#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version (namespace
// kernels) and a plain serial reference (namespace kernels::serial) kept for
// the agreement tests and the benchmark target. Parallel versions write
// per-row partial results and reduce them in a fixed order, so their output
// does not depend on the worker count.

#include <Eigen/Dense>
#include <span>

#include "szego/series.hpp"

namespace szego {

/// Worker count used by the parallel kernels.
int worker_count();
void set_worker_count(int workers);
/// Applies SZEGO_THREADS (positive integer) if set; returns the active count.
int configure_workers_from_env();

namespace kernels {

/// (1/n!) * sum over node n-tuples of prod_{mu != nu} |z_mu - z_nu| * prod w,
/// for n in {1, 2, 3}. This is the n-fold trapezoidal rule applied to the
/// Coulomb-gas integral with the weights folded in.
double coulomb_tuple_sum(std::span<const cplx> points, std::span<const double> weights, int n);

/// log((phi(zeta) - phi(z)) / (zeta - z)) on zeta = R e^{i alpha_p},
/// z = R e^{i beta_q}, with alpha, beta on the uniform N-grid; phi'(z) on the
/// diagonal. phi is the cap-free map. Row index p, column index q.
Eigen::MatrixXcd grunsky_log_grid(const ExteriorMap& map, double radius, int N);

/// G(l, p) = sum_i phase_i * basis(i, l) * conj(basis(i, p)).
Eigen::MatrixXcd twisted_gram(const Eigen::MatrixXcd& basis, std::span<const cplx> phase);

namespace serial {
double coulomb_tuple_sum(std::span<const cplx> points, std::span<const double> weights, int n);
Eigen::MatrixXcd grunsky_log_grid(const ExteriorMap& map, double radius, int N);
Eigen::MatrixXcd twisted_gram(const Eigen::MatrixXcd& basis, std::span<const cplx> phase);
}  // namespace serial

}  // namespace kernels
}  // namespace szego
