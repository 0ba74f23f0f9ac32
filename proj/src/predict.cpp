#include "szego/predict.hpp"

#include <cmath>

#include "szego/error.hpp"

namespace szego {

namespace {

struct FredholmTerms {
  int m = 0;
  cplx quadform{};
  double halflogdet = 0.0;
  double delta = 0.0;
};

Eigen::LLT<Eigen::MatrixXd> factor_IplusK(const OperatorPair& pair) {
  const Eigen::Index n = pair.K.rows();
  Eigen::LLT<Eigen::MatrixXd> llt(Eigen::MatrixXd::Identity(n, n) + pair.K);
  // A pivot this small means 1 - kappa_hat has reached roundoff level.
  if (llt.info() != Eigen::Success || (n > 0 && llt.matrixLLT().diagonal().minCoeff() < 1e-7)) {
    fail(ErrorCode::NotPositiveDefinite, "I + K is not positive definite (kappa_hat >= 1)");
  }
  return llt;
}

cplx solve_form(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::VectorXcd& v) {
  const Eigen::VectorXd re = v.real();
  const Eigen::VectorXd im = v.imag();
  const Eigen::VectorXd xr = llt.solve(re);
  const Eigen::VectorXd xi = llt.solve(im);
  // (re + i im)^t (xr + i xi)
  return {re.dot(xr) - im.dot(xi), re.dot(xi) + im.dot(xr)};
}

FredholmTerms terms_at(const ExteriorMap& map, const FourierSymbol& sym, int m) {
  const GrunskyTable table = grunsky_coefficients(map, m);
  const OperatorPair pair = operators(table);
  const SpectralReport rep = spectral_report(pair, map);
  FredholmTerms t;
  t.m = m;
  t.halflogdet = -0.5 * rep.log_det_IplusK;
  t.delta = rep.delta_m_tail;
  t.quadform = quadratic_form(pair, g_vector(sym.padded(m), m));
  return t;
}

FredholmTerms auto_terms(const ExteriorMap& map, const FourierSymbol& sym, int m) {
  if (m != kAutoM) {
    if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
    return terms_at(map, sym, m);
  }
  FredholmTerms cur = terms_at(map, sym, kAutoMStart);
  while (2 * cur.m <= kAutoMCap) {
    FredholmTerms next = terms_at(map, sym, 2 * cur.m);
    const bool done = std::abs(next.quadform - cur.quadform) < kAutoMTol &&
                      std::abs(next.halflogdet - cur.halflogdet) < kAutoMTol;
    cur = next;
    if (done) break;
  }
  return cur;
}

}  // namespace

cplx quadratic_form(const OperatorPair& pair, const GVector& v) {
  if (v.entries.size() != pair.K.rows()) {
    fail(ErrorCode::InvalidArgument, "vector length " + std::to_string(v.entries.size()) + " does not match 2m = " +
                                         std::to_string(pair.K.rows()));
  }
  return solve_form(factor_IplusK(pair), v.entries);
}

PredictionBreakdown predict_log_Dn(const ExteriorMap& map, const FourierSymbol& sym, int n, int m) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  const FredholmTerms t = auto_terms(map, sym, m);
  PredictionBreakdown p;
  p.n = n;
  p.m_used = t.m;
  p.term_cap = static_cast<double>(n) * n * std::log(map.cap());
  p.term_2pi = n * std::log(kTwoPi);
  p.term_a0 = static_cast<double>(n) * sym.a0 / 2.0;
  p.term_quadform = t.quadform;
  p.term_halflogdet = t.halflogdet;
  p.total_log = p.term_cap + p.term_2pi + p.term_a0 + p.term_quadform + p.term_halflogdet;
  p.delta_m = t.delta;
  return p;
}

PredictionBreakdown predict_log_Zn(const ExteriorMap& map, int n, int m) {
  return predict_log_Dn(map, FourierSymbol::zero(), n, m);
}

cplx predict_quotient(const ExteriorMap& /*map*/, const FourierSymbol& sym) { return kTwoPi * std::exp(sym.a0 / 2.0); }

cplx predict_beta_log(const ExteriorMap& map, const FourierSymbol& sym, int n, double beta, int m) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!(beta > 0.0)) fail(ErrorCode::InvalidArgument, "beta must be positive");
  if (sym.a0 != cplx{}) fail(ErrorCode::NonzeroMean, "the beta formula needs a0 = 0");

  auto value_at = [&](int mm) {
    const GrunskyTable table = grunsky_coefficients(map, mm);
    const OperatorPair pair = operators(table);
    const SpectralReport rep = spectral_report(pair, map);
    GVector gb;
    gb.entries = (beta / 2.0 - 1.0) * d_vector(table, mm).entries + g_vector(sym.padded(mm), mm).entries;
    return -0.5 * rep.log_det_IplusK + (2.0 / beta) * quadratic_form(pair, gb);
  };

  if (m != kAutoM) {
    if (m < 1) fail(ErrorCode::InvalidArgument, "m must be >= 1");
    return value_at(m);
  }
  int mm = kAutoMStart;
  cplx cur = value_at(mm);
  while (2 * mm <= kAutoMCap) {
    mm *= 2;
    const cplx next = value_at(mm);
    const bool done = std::abs(next - cur) < kAutoMTol;
    cur = next;
    if (done) break;
  }
  return cur;
}

double zn_beta_circle(int n, double beta) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (!(beta > 0.0)) fail(ErrorCode::InvalidArgument, "beta must be positive");
  return n * std::log(kTwoPi) - std::lgamma(n + 1.0) + std::lgamma(1.0 + beta * n / 2.0) -
         n * std::lgamma(1.0 + beta / 2.0);
}

}  // namespace szego
