#include "szego/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include "szego/error.hpp"

namespace szego::io {

namespace {

// Non-finite values travel as strings so that they survive a round trip.
json num(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  return x;
}

double get_num(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
  }
  throw ParseError(std::string("expected a number for '") + what + "'");
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

int get_int(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("expected an integer for '") + key + "'");
  return v.get<int>();
}

bool get_bool(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_boolean()) throw ParseError(std::string("expected a boolean for '") + key + "'");
  return v.get<bool>();
}

std::vector<cplx> complex_list(const json& j, const char* key) {
  if (!j.is_array()) throw ParseError(std::string("expected an array for '") + key + "'");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

json complex_array(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx c : v) a.push_back(complex_to_json(c));
  return a;
}

json real_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> real_list(const json& j, const char* key) {
  if (!j.is_array()) throw ParseError(std::string("expected an array for '") + key + "'");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(get_num(e, key));
  return out;
}

}  // namespace

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

json complex_to_json(cplx c) { return json::array({num(c.real()), num(c.imag())}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("complex numbers are written [re, im]");
  return {get_num(j[0], "re"), get_num(j[1], "im")};
}

ExteriorMap curve_from_json(const json& j) {
  const double cap = get_num(field(j, "cap"), "cap");
  const cplx phi0 = j.contains("phi0") ? complex_from_json(j.at("phi0")) : cplx{};
  std::vector<cplx> tail = complex_list(field(j, "tail"), "tail");
  return make_map(cap, phi0, std::move(tail));
}

json curve_to_json(const ExteriorMap& map) {
  return {{"cap", num(map.cap())}, {"phi0", complex_to_json(map.phi0())}, {"tail", complex_array(map.tail())}};
}

FourierSymbol symbol_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("symbol must be a JSON object");
  const bool samples = j.contains("theta_samples");
  const bool coeffs = j.contains("a0") || j.contains("a") || j.contains("b");
  if (samples && coeffs) throw ParseError("'theta_samples' cannot be combined with 'a0'/'a'/'b'");
  if (samples) return symbol_from_theta_samples(complex_list(j.at("theta_samples"), "theta_samples"));
  if (!coeffs) throw ParseError("symbol needs 'theta_samples' or 'a0'/'a'/'b'");
  FourierSymbol s;
  s.a0 = j.contains("a0") ? complex_from_json(j.at("a0")) : cplx{};
  if (j.contains("a")) s.a = complex_list(j.at("a"), "a");
  if (j.contains("b")) s.b = complex_list(j.at("b"), "b");
  const std::size_t k = std::max<std::size_t>({s.a.size(), s.b.size(), 1});
  s.a.resize(k, cplx{});
  s.b.resize(k, cplx{});
  return s;
}

json symbol_to_json(const FourierSymbol& sym) {
  return {{"a0", complex_to_json(sym.a0)}, {"a", complex_array(sym.a)}, {"b", complex_array(sym.b)}};
}

json to_json(const SpectralReport& r) {
  return {{"m", r.m},
          {"log_det_IplusK", num(r.log_det_IplusK)},
          {"log_det_IminusBstarB", num(r.log_det_IminusBstarB)},
          {"szego_energy", num(r.szego_energy)},
          {"hs_norm_sq", num(r.hs_norm_sq)},
          {"delta_m_tail", num(r.delta_m_tail)},
          {"kappa_hat", num(r.kappa_hat)}};
}

SpectralReport spectral_report_from_json(const json& j) {
  SpectralReport r;
  r.m = get_int(j, "m");
  r.log_det_IplusK = get_num(field(j, "log_det_IplusK"), "log_det_IplusK");
  r.log_det_IminusBstarB = get_num(field(j, "log_det_IminusBstarB"), "log_det_IminusBstarB");
  r.szego_energy = get_num(field(j, "szego_energy"), "szego_energy");
  r.hs_norm_sq = get_num(field(j, "hs_norm_sq"), "hs_norm_sq");
  r.delta_m_tail = get_num(field(j, "delta_m_tail"), "delta_m_tail");
  r.kappa_hat = get_num(field(j, "kappa_hat"), "kappa_hat");
  return r;
}

json to_json(const PredictionBreakdown& p) {
  return {{"n", p.n},
          {"m_used", p.m_used},
          {"term_cap", num(p.term_cap)},
          {"term_2pi", num(p.term_2pi)},
          {"term_a0", complex_to_json(p.term_a0)},
          {"term_quadform", complex_to_json(p.term_quadform)},
          {"term_halflogdet", num(p.term_halflogdet)},
          {"total_log", complex_to_json(p.total_log)},
          {"delta_m", num(p.delta_m)}};
}

PredictionBreakdown prediction_from_json(const json& j) {
  PredictionBreakdown p;
  p.n = get_int(j, "n");
  p.m_used = get_int(j, "m_used");
  p.term_cap = get_num(field(j, "term_cap"), "term_cap");
  p.term_2pi = get_num(field(j, "term_2pi"), "term_2pi");
  p.term_a0 = complex_from_json(field(j, "term_a0"));
  p.term_quadform = complex_from_json(field(j, "term_quadform"));
  p.term_halflogdet = get_num(field(j, "term_halflogdet"), "term_halflogdet");
  p.total_log = complex_from_json(field(j, "total_log"));
  p.delta_m = get_num(field(j, "delta_m"), "delta_m");
  return p;
}

json to_json(const DirectResult& d) {
  return {{"n", d.n},
          {"N_nodes", d.N_nodes},
          {"log_Dn", complex_to_json(d.log_Dn)},
          {"method", std::string(to_string(d.method))},
          {"cond_estimate", num(d.cond_estimate)},
          {"converged", d.converged},
          {"refinement_delta", num(d.refinement_delta)},
          {"zero_determinant", d.zero_determinant}};
}

DirectResult direct_result_from_json(const json& j) {
  DirectResult d;
  d.n = get_int(j, "n");
  d.N_nodes = get_int(j, "N_nodes");
  d.log_Dn = complex_from_json(field(j, "log_Dn"));
  const json& m = field(j, "method");
  if (!m.is_string()) throw ParseError("expected a string for 'method'");
  try {
    d.method = det_method_from_string(m.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  d.cond_estimate = get_num(field(j, "cond_estimate"), "cond_estimate");
  d.converged = get_bool(j, "converged");
  d.refinement_delta = get_num(field(j, "refinement_delta"), "refinement_delta");
  d.zero_determinant = get_bool(j, "zero_determinant");
  return d;
}

json to_json(const EnergyCurve& e) {
  return {{"n", e.n},
          {"r_grid", real_array(e.r_grid)},
          {"values", real_array(e.values)},
          {"value_at_smallest_r", num(e.value_at_smallest_r)},
          {"increasing_toward_one", e.increasing_toward_one}};
}

EnergyCurve energy_curve_from_json(const json& j) {
  EnergyCurve e;
  e.n = get_int(j, "n");
  e.r_grid = real_list(field(j, "r_grid"), "r_grid");
  e.values = real_list(field(j, "values"), "values");
  e.value_at_smallest_r = get_num(field(j, "value_at_smallest_r"), "value_at_smallest_r");
  e.increasing_toward_one = get_bool(j, "increasing_toward_one");
  return e;
}

json to_json(const ConvexityReport& c) {
  json flags = json::array();
  for (bool f : c.flagged) flags.push_back(f);
  return {{"n", c.n},
          {"tol", num(c.tol)},
          {"r_interior", real_array(c.r_interior)},
          {"estimates", real_array(c.estimates)},
          {"flagged", flags},
          {"all_ok", c.all_ok},
          {"r_largest", num(c.r_largest)},
          {"E_at_largest_r", num(c.E_at_largest_r)}};
}

json to_json(const BetaEstimate& b) {
  return {{"seed", b.seed},
          {"mean_log", num(b.mean_log)},
          {"std_error", num(b.std_error)},
          {"ess", num(b.ess)},
          {"acceptance", num(b.acceptance_rate)},
          {"samples", b.samples},
          {"tuned_width", num(b.tuned_width)},
          {"heavy_tail", b.heavy_tail}};
}

void write_table_csv(std::ostream& os, const GrunskyTable& table) {
  os << "k,l,re_a,im_a\n";
  for (int k = 1; k <= table.m; ++k)
    for (int l = 1; l <= table.m; ++l) {
      const cplx a = table.a(k - 1, l - 1);
      os << k << ',' << l << ',' << fmt(a.real()) << ',' << fmt(a.imag()) << '\n';
    }
}

GrunskyTable read_table_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "k,l,re_a,im_a") throw ParseError("bad table CSV header");
  std::vector<std::tuple<int, int, cplx>> rows;
  int m = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int k = 0, l = 0;
    double re = 0.0, im = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &k, &l, &re, &im) != 4 || k < 1 || l < 1) {
      throw ParseError("bad table CSV row: " + line);
    }
    rows.emplace_back(k, l, cplx(re, im));
    m = std::max({m, k, l});
  }
  GrunskyTable t;
  t.m = m;
  t.a = Eigen::MatrixXcd::Zero(m, m);
  for (const auto& [k, l, a] : rows) t.a(k - 1, l - 1) = a;
  return t;
}

void write_direct_csv_row(std::ostream& os, const DirectResult& d, double predicted, double residual) {
  os << d.n << ',' << d.N_nodes << ',' << fmt(d.log_Dn.real()) << ',' << fmt(d.log_Dn.imag()) << ','
     << fmt(predicted) << ',' << fmt(residual) << ',' << (d.converged ? "true" : "false") << '\n';
}

void write_beta_csv_row(std::ostream& os, const BetaEstimate& b) {
  os << b.seed << ',' << fmt(b.mean_log) << ',' << fmt(b.std_error) << ',' << fmt(b.ess) << ','
     << fmt(b.acceptance_rate) << '\n';
}

std::string svg_polyline(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                         bool log_y) {
  constexpr double W = 640, H = 400, pad = 40;
  std::vector<double> yy(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) yy[i] = log_y ? std::log10(std::max(std::abs(y[i]), 1e-300)) : y[i];
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!x.empty()) {
    x0 = *std::min_element(x.begin(), x.end());
    x1 = *std::max_element(x.begin(), x.end());
    y0 = *std::min_element(yy.begin(), yy.end());
    y1 = *std::max_element(yy.begin(), yy.end());
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<title>" << title << "</title>\n";
  os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << W - 2 * pad << "\" height=\"" << H - 2 * pad
     << "\" fill=\"none\" stroke=\"#999\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < x.size() && i < yy.size(); ++i) {
    const double px = pad + (x[i] - x0) / (x1 - x0) * (W - 2 * pad);
    const double py = H - pad - (yy[i] - y0) / (y1 - y0) * (H - 2 * pad);
    os << (i ? " " : "") << px << ',' << py;
  }
  os << "\"/>\n";
  os << "<text x=\"" << pad << "\" y=\"" << pad / 2 << "\" font-size=\"14\">" << title << "</text>\n";
  os << "<text x=\"" << pad << "\" y=\"" << H - 8 << "\" font-size=\"11\">x: " << fmt(x0) << " .. " << fmt(x1)
     << (log_y ? "   log10 y: " : "   y: ") << fmt(y0) << " .. " << fmt(y1) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace szego::io
