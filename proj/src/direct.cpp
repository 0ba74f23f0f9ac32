#include "szego/direct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "szego/error.hpp"
#include "szego/kernels.hpp"

namespace szego {

namespace {

struct WeightedNodes {
  Eigen::VectorXcd zeta;
  Eigen::VectorXd weight;      // w * e^{Re g}
  std::vector<cplx> phase;     // e^{i Im g}
  bool real = true;
};

WeightedNodes weighted_nodes(const ExteriorMap& map, const FourierSymbol& sym, int N) {
  const CurveSamples s = curve_samples(normalized(map), N);
  const std::vector<cplx> g = synthesize_theta_samples(sym, N);
  WeightedNodes out;
  out.real = sym.is_real();
  out.zeta.resize(N);
  out.weight.resize(N);
  out.phase.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out.zeta(i) = s.points[ui];
    out.weight(i) = s.weights[ui] * std::exp(g[ui].real());
    out.phase[ui] = out.real ? cplx(1.0) : std::polar(1.0, g[ui].imag());
    if (!(out.weight(i) >= 0.0) || !std::isfinite(out.weight(i))) {
      fail(ErrorCode::NegativeWeight, "quadrature weight " + std::to_string(out.weight(i)) + " at node " +
                                          std::to_string(i));
    }
  }
  return out;
}

double wrap_angle(double a) { return std::arg(std::polar(1.0, a)); }

double log_distance(cplx x, cplx y) {
  if (!std::isfinite(x.real()) || !std::isfinite(y.real())) {
    return x.real() == y.real() ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::hypot(x.real() - y.real(), wrap_angle(x.imag() - y.imag()));
}

struct LuLogDet {
  cplx log_det{};
  double rcond = 1.0;
  bool zero = false;
};

LuLogDet lu_log_det(const Eigen::MatrixXcd& G) {
  LuLogDet out;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(G);
  const Eigen::MatrixXcd& f = lu.matrixLU();
  double mag = 0.0;
  double arg = lu.permutationP().determinant() < 0 ? M_PI : 0.0;
  for (Eigen::Index k = 0; k < f.rows(); ++k) {
    const cplx u = f(k, k);
    if (u == cplx{}) {
      out.zero = true;
      out.rcond = 0.0;
      out.log_det = {-std::numeric_limits<double>::infinity(), 0.0};
      return out;
    }
    mag += std::log(std::abs(u));
    arg += std::arg(u);
  }
  out.log_det = {mag, wrap_angle(arg)};
  out.rcond = lu.rcond();
  return out;
}

struct Evaluation {
  cplx log_D{};
  double cond = 1.0;
  bool zero = false;
  DetMethod method = DetMethod::qr_positive;
};

// Stieltjes/Arnoldi orthogonalization of 1, zeta, zeta^2, ... in the weighted
// discrete inner product; q_k are the orthonormal polynomials at the nodes and
// h_k = ||P_k|| / ||P_{k-1}|| for the monic ones.
Evaluation evaluate(const ExteriorMap& map, const FourierSymbol& sym, int n, int N) {
  const WeightedNodes nodes = weighted_nodes(map, sym, N);
  Eigen::MatrixXcd Q(N, n);
  const Eigen::VectorXd v0 = nodes.weight.cwiseSqrt();
  const double nv0 = v0.norm();
  Q.col(0) = (v0 / nv0).cast<cplx>();
  double log_norm = std::log(nv0);
  double log_D = 2.0 * n * log_norm;
  double lo = log_norm;
  double hi = log_norm;
  for (int k = 1; k < n; ++k) {
    Eigen::VectorXcd u = nodes.zeta.cwiseProduct(Q.col(k - 1));
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd c = Q.leftCols(k).adjoint() * u;
      u -= Q.leftCols(k) * c;
    }
    const double h = u.norm();
    if (!(h > 0.0)) fail(ErrorCode::NotConverged, "orthogonalization broke down at degree " + std::to_string(k));
    Q.col(k) = u / h;
    log_D += 2.0 * (n - k) * std::log(h);
    log_norm += std::log(h);
    lo = std::min(lo, log_norm);
    hi = std::max(hi, log_norm);
  }
  Evaluation ev;
  ev.log_D = log_D;
  ev.cond = std::exp(2.0 * (hi - lo));
  if (!nodes.real) {
    const Eigen::MatrixXcd G = kernels::twisted_gram(Q, nodes.phase);
    const LuLogDet lu = lu_log_det(G);
    ev.method = DetMethod::lu_general;
    ev.zero = lu.zero;
    ev.cond = lu.rcond > 0.0 ? 1.0 / lu.rcond : std::numeric_limits<double>::infinity();
    ev.log_D = lu.zero ? lu.log_det : cplx(log_D, 0.0) + lu.log_det;
  }
  const double cap_term = static_cast<double>(n) * n * std::log(map.cap());
  ev.log_D += cap_term;
  return ev;
}

int auto_start(int n) {
  int N = 512;
  while (N < 8 * n) N *= 2;
  return N;
}

DirectResult assemble(int n, int N, const Evaluation& ev, double delta) {
  DirectResult r;
  r.n = n;
  r.N_nodes = N;
  r.log_Dn = ev.log_D;
  r.method = ev.method;
  r.cond_estimate = ev.cond;
  r.zero_determinant = ev.zero;
  r.refinement_delta = delta;
  r.converged = !ev.zero && delta <= kRefinementTol && (ev.method == DetMethod::qr_positive || ev.cond <= kCondLimit);
  return r;
}

}  // namespace

std::string_view to_string(DetMethod m) { return m == DetMethod::qr_positive ? "qr_positive" : "lu_general"; }

DetMethod det_method_from_string(std::string_view s) {
  if (s == "qr_positive") return DetMethod::qr_positive;
  if (s == "lu_general") return DetMethod::lu_general;
  fail(ErrorCode::InvalidArgument, "unknown method '" + std::string(s) + "'");
}

DirectResult log_det_Dn(const ExteriorMap& map, const FourierSymbol& sym, int n, int N) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (N != kAutoNodes) {
    if (N < 4 * n) fail(ErrorCode::BadSampleCount, "N must be >= 4n");
    const Evaluation a = evaluate(map, sym, n, N);
    double delta = std::numeric_limits<double>::infinity();
    if (2 * N <= kMaxNodes) delta = log_distance(a.log_D, evaluate(map, sym, n, 2 * N).log_D);
    return assemble(n, N, a, delta);
  }
  int coarse = auto_start(n);
  Evaluation a = evaluate(map, sym, n, coarse);
  while (2 * coarse <= kMaxNodes) {
    const Evaluation b = evaluate(map, sym, n, 2 * coarse);
    const double delta = log_distance(a.log_D, b.log_D);
    if (delta <= kRefinementTol) return assemble(n, 2 * coarse, b, delta);
    a = b;
    coarse *= 2;
  }
  fail(ErrorCode::NotConverged, "quadrature did not settle below N = " + std::to_string(kMaxNodes));
}

cplx log_det_in_basis(const ExteriorMap& map, const FourierSymbol& sym, int n, int N, const Eigen::MatrixXcd& mix) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (mix.rows() != n || mix.cols() != n) fail(ErrorCode::InvalidArgument, "basis mix must be n x n");
  const WeightedNodes nodes = weighted_nodes(map, sym, N);
  Eigen::MatrixXcd powers(N, n);
  powers.col(0).setOnes();
  for (int k = 1; k < n; ++k) powers.col(k) = powers.col(k - 1).cwiseProduct(nodes.zeta);
  const Eigen::MatrixXcd A = nodes.weight.cwiseSqrt().cast<cplx>().asDiagonal() * powers * mix;
  const double cap_term = static_cast<double>(n) * n * std::log(map.cap());
  if (nodes.real) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += 2.0 * std::log(std::abs(qr.matrixQR()(k, k)));
    return s + cap_term;
  }
  return lu_log_det(kernels::twisted_gram(A, nodes.phase)).log_det + cap_term;
}

cplx quotient_ratio(const ExteriorMap& map, const FourierSymbol& sym, int n) {
  const DirectResult lo = log_det_Dn(map, sym, n);
  const DirectResult hi = log_det_Dn(map, sym, n + 1);
  return std::exp(hi.log_Dn - lo.log_Dn - (2.0 * n + 1.0) * std::log(map.cap()));
}

EnergyCurve finite_energy(const ExteriorMap& map, int n, const std::vector<double>& r_grid) {
  if (r_grid.empty()) fail(ErrorCode::InvalidArgument, "empty r grid");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 1.0)) fail(ErrorCode::DilationNotGreaterThanOne, "r = " + std::to_string(r_grid[i]));
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) fail(ErrorCode::InvalidArgument, "r grid must be strictly increasing");
  }
  EnergyCurve curve;
  curve.n = n;
  curve.r_grid = r_grid;
  const double offset = n * std::log(kTwoPi) + static_cast<double>(n) * n * std::log(map.cap());
  for (double r : r_grid) {
    const DirectResult d = log_det_Dn(dilate_map(map, r), FourierSymbol::zero(), n);
    curve.values.push_back(d.log_Dn.real() - offset);
  }
  curve.value_at_smallest_r = curve.values.front();
  curve.increasing_toward_one = curve.values.size() > 1 && curve.values[0] > curve.values[1];
  return curve;
}

double bruteforce_Dn(const ExteriorMap& map, const FourierSymbol& sym, int n, int grid) {
  if (n < 1 || n > 3) fail(ErrorCode::InvalidArgument, "bruteforce_Dn supports n in {1, 2, 3}");
  if (grid < 64 || !is_power_of_two(grid)) fail(ErrorCode::BadSampleCount, "grid must be a power of two >= 64");
  if (!sym.is_real()) fail(ErrorCode::InvalidArgument, "bruteforce_Dn needs a real symbol");
  const WeightedNodes nodes = weighted_nodes(map, sym, grid);
  std::vector<cplx> pts(nodes.zeta.data(), nodes.zeta.data() + grid);
  std::vector<double> w(nodes.weight.data(), nodes.weight.data() + grid);
  const double s = kernels::coulomb_tuple_sum(pts, w, n);
  return std::log(s) + static_cast<double>(n) * n * std::log(map.cap());
}

ConvexityReport convexity_check(const EnergyCurve& curve, double tol) {
  const auto& r = curve.r_grid;
  const std::size_t count = r.size();
  if (count < 5 || curve.values.size() != count) {
    fail(ErrorCode::GridTooCoarse, "convexity check needs at least 5 grid points");
  }
  const double h = std::log(r[1] / r[0]);
  for (std::size_t i = 1; i < count; ++i) {
    if (!(r[i] > r[i - 1]) || std::abs(std::log(r[i] / r[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      fail(ErrorCode::GridTooCoarse, "convexity check needs a uniform log-spaced grid");
    }
  }
  ConvexityReport rep;
  rep.n = curve.n;
  rep.tol = tol;
  const auto& E = curve.values;
  for (std::size_t i = 1; i + 1 < count; ++i) {
    const double Ett = (E[i + 1] - 2.0 * E[i] + E[i - 1]) / (h * h);
    const double est = Ett / r[i];
    rep.r_interior.push_back(r[i]);
    rep.estimates.push_back(est);
    const bool bad = est < -tol;
    rep.flagged.push_back(bad);
    if (bad) rep.all_ok = false;
  }
  rep.r_largest = r.back();
  rep.E_at_largest_r = E.back();
  return rep;
}

std::vector<double> log_spaced(double r_lo, double r_hi, int count) {
  if (count < 2 || !(r_lo > 0.0) || !(r_hi > r_lo)) fail(ErrorCode::InvalidArgument, "bad log-spaced range");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = std::log(r_hi / r_lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = r_lo * std::exp(step * i);
  out.back() = r_hi;
  return out;
}

}  // namespace szego
