#include "szego/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "szego/error.hpp"

namespace szego {

// ---------------------------------------------------------------------------
// LaurentSeries

LaurentSeries::LaurentSeries(int lead_degree, int trunc_order)
    : lead_(lead_degree), trunc_(trunc_order) {
  if (trunc_order < 0 || lead_degree < -trunc_order) {
    fail(ErrorCode::InvalidArgument, "Laurent series needs lead_degree >= -trunc_order >= ...");
  }
  coeffs_.assign(static_cast<std::size_t>(lead_degree + trunc_order + 1), cplx{});
}

LaurentSeries::LaurentSeries(int lead_degree, int trunc_order, std::vector<cplx> coeffs)
    : LaurentSeries(lead_degree, trunc_order) {
  if (coeffs.size() != coeffs_.size()) {
    fail(ErrorCode::BadLength, "Laurent series with lead " + std::to_string(lead_degree) +
                                   " and order " + std::to_string(trunc_order) + " needs " +
                                   std::to_string(coeffs_.size()) + " coefficients");
  }
  coeffs_ = std::move(coeffs);
}

LaurentSeries LaurentSeries::monomial(int degree, int trunc_order, cplx value) {
  LaurentSeries s(degree, trunc_order);
  s.coeffs_[0] = value;
  return s;
}

cplx LaurentSeries::coeff(int degree) const noexcept {
  if (degree > lead_ || degree < -trunc_) return {};
  return coeffs_[static_cast<std::size_t>(lead_ - degree)];
}

void LaurentSeries::set_coeff(int degree, cplx value) {
  if (degree > lead_ || degree < -trunc_) {
    fail(ErrorCode::InvalidArgument, "degree outside stored range");
  }
  coeffs_[static_cast<std::size_t>(lead_ - degree)] = value;
}

LaurentSeries& LaurentSeries::add_scaled(cplx alpha, const LaurentSeries& other) {
  if (other.trunc_ != trunc_) fail(ErrorCode::MismatchedTruncation, "add_scaled");
  if (other.lead_ > lead_) fail(ErrorCode::InvalidArgument, "add_scaled: lead degree too high");
  const std::size_t offset = static_cast<std::size_t>(lead_ - other.lead_);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[offset + i] += alpha * other.coeffs_[i];
  return *this;
}

LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.trunc_order() != b.trunc_order()) {
    fail(ErrorCode::MismatchedTruncation, "laurent_mul: orders " + std::to_string(a.trunc_order()) +
                                              " and " + std::to_string(b.trunc_order()));
  }
  const int M = a.trunc_order();
  const int lead = a.lead_degree() + b.lead_degree();
  auto ca = a.coeffs();
  auto cb = b.coeffs();
  // Output index i + j <-> degree lead - i - j; keep degrees >= -M.
  const std::size_t out_size = static_cast<std::size_t>(lead + M + 1);
  std::vector<cplx> out(out_size, cplx{});
  for (std::size_t i = 0; i < ca.size() && i < out_size; ++i) {
    if (ca[i] == cplx{}) continue;
    const std::size_t jmax = std::min(cb.size(), out_size - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += ca[i] * cb[j];
  }
  return LaurentSeries(lead, M, std::move(out));
}

// ---------------------------------------------------------------------------
// ExteriorMap

cplx ExteriorMap::evaluate(cplx z, int deriv_order) const {
  const cplx w = 1.0 / z;
  const int M = order();
  // Horner in w for sum_k c_k(deriv) phi_{-k} w^{k-1}.
  auto weight = [deriv_order](int k) -> double {
    switch (deriv_order) {
      case 0: return 1.0;
      case 1: return static_cast<double>(k);
      case 2: return static_cast<double>(k) * (k + 1);
      default: return static_cast<double>(k) * (k + 1) * (k + 2);
    }
  };
  cplx acc{};
  for (int k = M; k >= 1; --k) acc = acc * w + weight(k) * tail_[static_cast<std::size_t>(k - 1)];
  cplx value;
  switch (deriv_order) {
    case 0: value = z + phi0_ + w * acc; break;
    case 1: value = 1.0 - w * w * acc; break;
    case 2: value = w * w * w * acc; break;
    case 3: value = -(w * w) * (w * w) * acc; break;
    default: fail(ErrorCode::InvalidArgument, "deriv_order must be 0..3");
  }
  return cap_ * value;
}

LaurentSeries ExteriorMap::normalized_series(int trunc_order) const {
  if (trunc_order < order()) {
    fail(ErrorCode::TruncationTooSmall, "series order " + std::to_string(trunc_order) +
                                            " below map order " + std::to_string(order()));
  }
  LaurentSeries s(1, trunc_order);
  s.set_coeff(1, 1.0);
  s.set_coeff(0, phi0_);
  for (int k = 1; k <= order(); ++k) s.set_coeff(-k, tail_[static_cast<std::size_t>(k - 1)]);
  return s;
}

bool ExteriorMap::is_circle() const noexcept {
  return std::all_of(tail_.begin(), tail_.end(), [](cplx c) { return c == cplx{}; });
}

std::string ExteriorMap::fingerprint() const {
  std::ostringstream os;
  os.precision(17);
  os << "cap=" << cap_ << ";phi0=" << phi0_.real() << ',' << phi0_.imag() << ";tail=";
  for (cplx c : tail_) os << c.real() << ',' << c.imag() << ';';
  return os.str();
}

namespace {

struct Segment {
  cplx a, b;
  double xmin, xmax, ymin, ymax;
  int index;
};

double cross(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

double point_segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 > 0 ? ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

double segment_distance(const Segment& s, const Segment& t) {
  const double d1 = cross(s.b - s.a, t.a - s.a);
  const double d2 = cross(s.b - s.a, t.b - s.a);
  const double d3 = cross(t.b - t.a, s.a - t.a);
  const double d4 = cross(t.b - t.a, s.b - t.a);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return 0.0;
  }
  return std::min({point_segment_distance(s.a, t.a, t.b), point_segment_distance(s.b, t.a, t.b),
                   point_segment_distance(t.a, s.a, s.b), point_segment_distance(t.b, s.a, s.b)});
}

// Sweep over x-sorted bounding boxes; only non-adjacent polygon edges count.
bool polygon_self_intersects(const std::vector<cplx>& pts, double tol) {
  const int n = static_cast<int>(pts.size());
  std::vector<Segment> segs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const cplx a = pts[static_cast<std::size_t>(i)];
    const cplx b = pts[static_cast<std::size_t>((i + 1) % n)];
    segs[static_cast<std::size_t>(i)] = {a,
                                         b,
                                         std::min(a.real(), b.real()) - tol,
                                         std::max(a.real(), b.real()) + tol,
                                         std::min(a.imag(), b.imag()) - tol,
                                         std::max(a.imag(), b.imag()) + tol,
                                         i};
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& s, const Segment& t) { return s.xmin < t.xmin; });
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size() && segs[j].xmin <= segs[i].xmax; ++j) {
      const Segment& s = segs[i];
      const Segment& t = segs[j];
      if (t.ymin > s.ymax || s.ymin > t.ymax) continue;
      const int gap = std::abs(s.index - t.index);
      if (gap == 1 || gap == n - 1) continue;
      if (segment_distance(s, t) < tol) return true;
    }
  }
  return false;
}

}  // namespace

ExteriorMap make_map_unchecked(double cap, cplx phi0, std::vector<cplx> tail) {
  if (!(cap > 0.0) || !std::isfinite(cap)) {
    fail(ErrorCode::NonPositiveCapacity, "cap must be a positive finite number");
  }
  if (tail.empty()) tail.push_back(cplx{});
  return ExteriorMap(cap, phi0, std::move(tail));
}

ExteriorMap make_map(double cap, cplx phi0, std::vector<cplx> tail) {
  ExteriorMap map = make_map_unchecked(cap, phi0, std::move(tail));
  if (map.is_circle()) return map;

  std::vector<cplx> pts(kUnivalenceGrid);
  double min_deriv = std::numeric_limits<double>::infinity();
  for (int j = 0; j < kUnivalenceGrid; ++j) {
    const cplx z = std::polar(1.0, kTwoPi * j / kUnivalenceGrid);
    pts[static_cast<std::size_t>(j)] = map.evaluate(z, 0);
    min_deriv = std::min(min_deriv, std::abs(map.evaluate(z, 1)) / cap);
  }
  if (!(min_deriv > 1e-10)) {
    fail(ErrorCode::DerivativeVanishes,
         "min |phi'| on the unit circle is " + std::to_string(min_deriv));
  }
  if (polygon_self_intersects(pts, kSelfIntersectionTol)) {
    fail(ErrorCode::CurveSelfIntersects, "sampled boundary curve is not simple");
  }
  return map;
}

cplx eval_map(const ExteriorMap& map, cplx z, int deriv_order) {
  if (deriv_order < 0 || deriv_order > 3) fail(ErrorCode::InvalidArgument, "deriv_order must be 0..3");
  if (std::abs(z) < 1.0 - 1e-12) fail(ErrorCode::OutsideDomain, "|z| < 1");
  return map.evaluate(z, deriv_order);
}

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

CurveSamples curve_samples(const ExteriorMap& map, int N) {
  if (N < 8 || !is_power_of_two(N)) {
    fail(ErrorCode::BadSampleCount, "N = " + std::to_string(N) + " is not a power of two >= 8");
  }
  CurveSamples s;
  const auto n = static_cast<std::size_t>(N);
  s.theta.resize(n);
  s.unit.resize(n);
  s.points.resize(n);
  s.weights.resize(n);
  const double h = kTwoPi / N;
  for (std::size_t j = 0; j < n; ++j) {
    const double theta = h * static_cast<double>(j);
    const cplx z = std::polar(1.0, theta);
    s.theta[j] = theta;
    s.unit[j] = z;
    s.points[j] = map.evaluate(z, 0);
    s.weights[j] = std::abs(map.evaluate(z, 1)) * h;
  }
  return s;
}

ExteriorMap dilate_map(const ExteriorMap& map, double r) {
  if (!(r > 1.0)) fail(ErrorCode::DilationNotGreaterThanOne, "r = " + std::to_string(r));
  std::vector<cplx> tail = map.tail();
  double scale = r;
  for (cplx& c : tail) {
    scale *= r;
    c /= scale;
  }
  return make_map_unchecked(map.cap(), map.phi0() / r, std::move(tail));
}

ExteriorMap rotate_map(const ExteriorMap& map, double omega) {
  std::vector<cplx> tail = map.tail();
  for (std::size_t k = 1; k <= tail.size(); ++k) tail[k - 1] *= std::polar(1.0, omega * static_cast<double>(k + 1));
  return make_map_unchecked(map.cap(), map.phi0() * std::polar(1.0, omega), std::move(tail));
}

ExteriorMap translate_map(const ExteriorMap& map, cplx shift) {
  return make_map_unchecked(map.cap(), map.phi0() + shift / map.cap(), map.tail());
}

ExteriorMap scale_map(const ExteriorMap& map, double factor) {
  if (!(factor > 0.0)) fail(ErrorCode::NonPositiveCapacity, "scale factor must be positive");
  return make_map_unchecked(map.cap() * factor, map.phi0(), map.tail());
}

ExteriorMap normalized(const ExteriorMap& map) {
  return make_map_unchecked(1.0, map.phi0(), map.tail());
}

ExteriorMap q_curve(cplx q, double cap) { return make_map(cap, 0.0, {q}); }

ExteriorMap circle_map(double cap) { return make_map(cap, 0.0, {cplx{}}); }

ExteriorMap builtin_map(std::string_view name) {
  if (name == "circle") return circle_map();
  if (name == "ellipse") return q_curve(0.5);
  if (name == "trefoil") return make_map(1.0, 0.0, {0.0, 0.25});
  if (name == "skew") return make_map(1.0, 0.0, {cplx(0.2, 0.1), cplx(0.0, 0.1), cplx(0.05, 0.0)});
  fail(ErrorCode::InvalidArgument, "unknown built-in curve '" + std::string(name) + "'");
}

std::vector<std::string> builtin_map_names() { return {"circle", "ellipse", "trefoil", "skew"}; }

}  // namespace szego
