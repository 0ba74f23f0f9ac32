#include "szego/grunsky.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "szego/error.hpp"
#include "szego/kernels.hpp"
#include "fftw_guard.hpp"

namespace szego {

namespace {

double max_abs(const Eigen::MatrixXcd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

void symmetrize(GrunskyTable& t) {
  const double scale = max_abs(t.a);
  const double defect = max_abs(t.a - t.a.transpose());
  t.asymmetry = scale > 0.0 ? defect / scale : 0.0;
  const Eigen::MatrixXcd sym = 0.5 * (t.a + t.a.transpose());
  t.a = sym;
}

void check_m(int m) {
  if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
}

}  // namespace

int default_faber_order(const ExteriorMap& map, int m) { return std::max(3 * m, map.order()); }

GrunskyTable grunsky_coefficients(const ExteriorMap& map, int m, int series_order) {
  check_m(m);
  const int M = series_order == 0 ? default_faber_order(map, m) : series_order;
  if (M < 3 * m) {
    fail(ErrorCode::TruncationTooSmall, "series order " + std::to_string(M) + " < 3m = " + std::to_string(3 * m));
  }
  const LaurentSeries phi = map.normalized_series(M);

  // faber[k] holds Phi_k(phi(z)) = z^k + (negative powers only).
  std::vector<LaurentSeries> faber;
  faber.reserve(static_cast<std::size_t>(m) + 1);
  faber.push_back(LaurentSeries::monomial(0, M));

  GrunskyTable table;
  table.m = m;
  table.a = Eigen::MatrixXcd::Zero(m, m);
  table.source_map_id = normalized(map).fingerprint();

  for (int k = 1; k <= m; ++k) {
    LaurentSeries next = laurent_mul(phi, faber.back());
    // Unit-triangular elimination of z^{k-1}, ..., z^0 against lower Faber
    // polynomials; each carries exactly one nonnegative power.
    for (int d = k - 1; d >= 0; --d) {
      const cplx c = next.coeff(d);
      if (c == cplx{}) continue;
      next.add_scaled(-c, faber[static_cast<std::size_t>(d)]);
      next.set_coeff(d, cplx{});
    }
    for (int l = 1; l <= m; ++l) table.a(k - 1, l - 1) = next.coeff(-l) / static_cast<double>(k);
    faber.push_back(std::move(next));
  }
  symmetrize(table);
  return table;
}

GrunskyTable grunsky_coefficients_sampled(const ExteriorMap& map, int m, double radius, int grid) {
  check_m(m);
  if (!(radius > 1.0)) fail(ErrorCode::InvalidArgument, "sampling radius must exceed 1");
  int N = grid;
  if (N == 0) {
    N = 16;
    while (N < 8 * m) N *= 2;
  }
  if (N < 8 * m || !is_power_of_two(N)) {
    fail(ErrorCode::BadSampleCount, "grid must be a power of two >= 8m");
  }

  const Eigen::MatrixXcd f = kernels::grunsky_log_grid(map, radius, N);

  for (int p = 0; p < N; ++p) {
    for (int q = 0; q < N; ++q) {
      const double here = f(p, q).imag();
      const double down = f((p + 1) % N, q).imag();
      const double right = f(p, (q + 1) % N).imag();
      if (std::abs(down - here) > M_PI || std::abs(right - here) > M_PI) {
        fail(ErrorCode::BranchJumpDetected, "principal log jumps on the sampling torus at radius " +
                                                std::to_string(radius));
      }
    }
  }

  // Row-major copy: index p*N + q.
  std::vector<cplx> buf(static_cast<std::size_t>(N) * N);
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q) buf[static_cast<std::size_t>(p) * N + q] = f(p, q);
  {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
      auto* data = reinterpret_cast<fftw_complex*>(buf.data());
      plan = fftw_plan_dft_2d(N, N, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double norm = 1.0 / (static_cast<double>(N) * N);
  double peak = 0.0;
  double tail = 0.0;
  for (int k = 0; k < N; ++k) {
    for (int l = 0; l < N; ++l) {
      const double mag = std::abs(buf[static_cast<std::size_t>(k) * N + l]) * norm;
      peak = std::max(peak, mag);
      if (std::max(k, l) >= N / 2) tail = std::max(tail, mag);
    }
  }
  if (tail > 1e-14 && tail > 1e-8 * peak) {
    fail(ErrorCode::AliasingDetected, "spectral tail " + std::to_string(tail / peak) +
                                          " of peak; refine the grid or move the radius away from 1");
  }

  GrunskyTable table;
  table.m = m;
  table.a = Eigen::MatrixXcd::Zero(m, m);
  table.source_map_id = normalized(map).fingerprint();
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= m; ++l) {
      const cplx c = buf[static_cast<std::size_t>(k) * N + l] * norm;
      table.a(k - 1, l - 1) = -c * std::pow(radius, k + l);
    }
  }
  symmetrize(table);
  return table;
}

Eigen::MatrixXd k_matrix(const Eigen::MatrixXcd& B) {
  const Eigen::Index m = B.rows();
  Eigen::MatrixXd K(2 * m, 2 * m);
  const Eigen::MatrixXd re = B.real();
  const Eigen::MatrixXd im = B.imag();
  K.topLeftCorner(m, m) = re;
  K.topRightCorner(m, m) = im;
  K.bottomLeftCorner(m, m) = im;
  K.bottomRightCorner(m, m) = -re;
  return K;
}

OperatorPair operators(const GrunskyTable& table) {
  OperatorPair pair;
  const int m = table.m;
  pair.B.resize(m, m);
  for (int k = 1; k <= m; ++k)
    for (int l = 1; l <= m; ++l)
      pair.B(k - 1, l - 1) = std::sqrt(static_cast<double>(k) * l) * table.a(k - 1, l - 1);
  pair.K = k_matrix(pair.B);
  return pair;
}

TakagiFactor takagi(const Eigen::MatrixXcd& B) {
  if (B.rows() != B.cols()) fail(ErrorCode::InvalidArgument, "takagi needs a square matrix");
  const Eigen::Index m = B.rows();
  const double bscale = std::max(1.0, max_abs(B));
  if (max_abs(B - B.transpose()) > 1e-12 * bscale) fail(ErrorCode::NotSymmetric, "B is not symmetric");

  TakagiFactor out;
  out.U = Eigen::MatrixXcd::Zero(m, m);
  out.lambda = Eigen::VectorXd::Zero(m);
  if (m == 0) return out;

  const Eigen::MatrixXd K = k_matrix(B);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(K);
  if (eig.info() != Eigen::Success) fail(ErrorCode::PairingFailed, "eigensolver did not converge");
  const Eigen::VectorXd& ev = eig.eigenvalues();  // ascending
  const Eigen::MatrixXd& V = eig.eigenvectors();
  const Eigen::Index n2 = 2 * m;

  const double kscale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < m; ++i) {
    if (std::abs(ev(i) + ev(n2 - 1 - i)) > 1e-9 * kscale) {
      fail(ErrorCode::PairingFailed, "eigenvalues of K are not symmetric about zero");
    }
  }

  // K (r; s) = lambda (r; s) iff B conj(r + i s) = lambda (r + i s), and the
  // -lambda eigenvector is J (r; s) = (-s; r). Walk eigenvectors from the top
  // and keep each one after orthogonalizing against every accepted v and Jv;
  // this also splits the (J-invariant) near-zero cluster correctly.
  auto J = [m](const Eigen::VectorXd& v) {
    Eigen::VectorXd w(2 * m);
    w.head(m) = -v.tail(m);
    w.tail(m) = v.head(m);
    return w;
  };
  std::vector<Eigen::VectorXd> accepted;
  accepted.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index i = n2 - 1; i >= 0 && static_cast<Eigen::Index>(accepted.size()) < m; --i) {
    Eigen::VectorXd v = V.col(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& a : accepted) {
        v -= a.dot(v) * a;
        const Eigen::VectorXd ja = J(a);
        v -= ja.dot(v) * ja;
      }
    }
    const double nv = v.norm();
    if (nv < 0.5) continue;
    accepted.push_back(v / nv);
  }
  if (static_cast<Eigen::Index>(accepted.size()) < m) {
    fail(ErrorCode::PairingFailed, "could not select m orthogonal eigenvector pairs");
  }

  std::vector<double> rayleigh(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& v = accepted[static_cast<std::size_t>(k)];
    rayleigh[static_cast<std::size_t>(k)] = std::max(0.0, v.dot(K * v));
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return rayleigh[static_cast<std::size_t>(x)] > rayleigh[static_cast<std::size_t>(y)];
  });
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto src = static_cast<std::size_t>(order[static_cast<std::size_t>(k)]);
    const auto& v = accepted[src];
    out.lambda(k) = rayleigh[src];
    for (Eigen::Index j = 0; j < m; ++j) out.U(j, k) = cplx(v(j), v(m + j));
  }

  const Eigen::MatrixXcd recon = out.U * out.lambda.cast<cplx>().asDiagonal() * out.U.transpose();
  out.residual = max_abs(B - recon);
  out.unitarity_defect = max_abs(out.U * out.U.adjoint() - Eigen::MatrixXcd::Identity(m, m));
  return out;
}

SpectralReport spectral_report(const OperatorPair& pair, const ExteriorMap& /*map*/) {
  SpectralReport rep;
  const int m = pair.m();
  rep.m = m;
  const TakagiFactor tf = takagi(pair.B);
  rep.kappa_hat = m > 0 ? tf.lambda(0) : 0.0;
  if (rep.kappa_hat >= 1.0 - 1e-10) {
    fail(ErrorCode::SingularValueAtOne, "largest singular value of B is " + std::to_string(rep.kappa_hat));
  }
  for (int j = 0; j < m; ++j) rep.log_det_IminusBstarB += std::log1p(-tf.lambda(j) * tf.lambda(j));
  rep.szego_energy = -0.5 * rep.log_det_IminusBstarB;

  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pair.K, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) rep.log_det_IplusK += std::log1p(eig.eigenvalues()(i));
  }
  rep.hs_norm_sq = pair.B.cwiseAbs2().sum();

  // Outermost row and column: the part of delta_{m-1} the table resolves.
  double tail = 0.0;
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= m; ++l) {
      if (std::max(k, l) != m) continue;
      tail += std::pow(static_cast<double>(k) * l, 2.0 + kDeltaEpsilon) * std::norm(pair.B(k - 1, l - 1));
    }
  }
  rep.delta_m_tail = std::sqrt(tail);
  return rep;
}

GrunskyTable dilated_table(const GrunskyTable& table, double r) {
  if (!(r > 1.0)) fail(ErrorCode::DilationNotGreaterThanOne, "r = " + std::to_string(r));
  GrunskyTable out = table;
  for (int k = 1; k <= table.m; ++k)
    for (int l = 1; l <= table.m; ++l) out.a(k - 1, l - 1) *= std::pow(r, -(k + l));
  out.source_map_id = table.source_map_id + "|dilated=" + std::to_string(r);
  return out;
}

int auto_truncation(const ExteriorMap& map, int start, double tol, int max_m) {
  int m = std::max(1, std::min(start, max_m));
  double energy = spectral_report(operators(grunsky_coefficients(map, m)), map).szego_energy;
  while (2 * m <= max_m) {
    const int next = 2 * m;
    const double e2 = spectral_report(operators(grunsky_coefficients(map, next)), map).szego_energy;
    m = next;
    if (std::abs(e2 - energy) < tol) break;
    energy = e2;
  }
  return m;
}

}  // namespace szego
