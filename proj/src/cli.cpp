#include "szego/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "szego/direct.hpp"
#include "szego/error.hpp"
#include "szego/grunsky.hpp"
#include "szego/io.hpp"
#include "szego/kernels.hpp"
#include "szego/mcbeta.hpp"
#include "szego/predict.hpp"

namespace szego::cli {

namespace {

using io::ParseError;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << text;
}

double residual_of(cplx direct, cplx predicted) {
  return std::hypot(direct.real() - predicted.real(), std::arg(std::polar(1.0, direct.imag() - predicted.imag())));
}

struct Common {
  std::string curve;
  std::string symbol;
};

void add_curve(CLI::App* sub, Common& c, bool with_symbol) {
  sub->add_option("--curve", c.curve, "curve JSON file or builtin:NAME")->required();
  if (with_symbol) sub->add_option("--symbol", c.symbol, "symbol JSON file (default: g = 0)");
}

}  // namespace

ExteriorMap load_curve(const std::string& source) {
  constexpr std::string_view prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) {
    const std::string name = source.substr(prefix.size());
    const auto names = builtin_map_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ParseError("unknown built-in curve '" + name + "'");
    }
    return builtin_map(name);
  }
  return io::curve_from_json(io::read_json_file(source));
}

FourierSymbol load_symbol(const std::string& path) {
  if (path.empty()) return FourierSymbol::zero();
  return io::symbol_from_json(io::read_json_file(path));
}

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      std::size_t used = 0;
      const int lo = std::stoi(text.substr(0, dots), &used);
      if (used != dots) throw ParseError("bad range '" + text + "'");
      const std::string rest = text.substr(dots + 2);
      const int hi = std::stoi(rest, &used);
      if (used != rest.size() || hi < lo) throw ParseError("bad range '" + text + "'");
      for (int i = lo; i <= hi; ++i) out.push_back(i);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw ParseError("bad integer '" + item + "'");
    }
  } catch (const std::logic_error&) {
    throw ParseError("bad integer list '" + text + "'");
  }
  if (out.empty()) throw ParseError("empty integer list");
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  try {
    if (std::count(text.begin(), text.end(), ':') == 2) {
      const auto a = text.find(':');
      const auto b = text.find(':', a + 1);
      const double lo = std::stod(text.substr(0, a));
      const double hi = std::stod(text.substr(a + 1, b - a - 1));
      const int count = std::stoi(text.substr(b + 1));
      if (count < 2 || !(hi > lo) || !(lo > 0)) throw ParseError("bad log range '" + text + "'");
      return log_spaced(lo, hi, count);
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw ParseError("bad number '" + item + "'");
    }
  } catch (const std::logic_error&) {
    throw ParseError("bad number list '" + text + "'");
  }
  if (out.empty()) throw ParseError("empty number list");
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grunsky operators, Fredholm determinants and Toeplitz-type asymptotics on analytic curves"};
  app.require_subcommand(1);

  Common common;

  auto* grunsky = app.add_subcommand("grunsky", "Grunsky table CSV and spectral report JSON");
  add_curve(grunsky, common, false);
  int g_m = 8;
  int g_order = 0;
  double g_radius = 0.0;
  std::string g_report;
  std::string g_csv;
  grunsky->add_option("--m", g_m, "truncation size")->check(CLI::Range(1, 4096));
  grunsky->add_option("--series-order", g_order, "Faber working order (default max(3m, map order))");
  grunsky->add_option("--sampled-radius", g_radius, "use the sampled route at this radius (> 1)");
  grunsky->add_option("--csv", g_csv, "write the table CSV here instead of standard output");
  grunsky->add_option("--report", g_report, "write the spectral report JSON here (default: standard error)");

  auto* predict = app.add_subcommand("predict", "limit formula, term by term, as JSON");
  add_curve(predict, common, true);
  int p_n = 1;
  int p_m = kAutoM;
  double p_beta = 0.0;
  predict->add_option("--n", p_n, "matrix size")->required()->check(CLI::PositiveNumber);
  predict->add_option("--m", p_m, "Grunsky truncation (0: auto)")->check(CLI::NonNegativeNumber);
  predict->add_option("--beta", p_beta, "experimental: evaluate the beta-ensemble conjecture instead")
      ->check(CLI::PositiveNumber);

  auto* direct = app.add_subcommand("direct", "finite-n determinant by quadrature");
  add_curve(direct, common, true);
  int d_n = 1;
  int d_N = kAutoNodes;
  int d_m = kAutoM;
  bool d_json = false;
  direct->add_option("--n", d_n, "matrix size")->required()->check(CLI::PositiveNumber);
  direct->add_option("--N", d_N, "quadrature nodes, power of two (0: auto)")->check(CLI::NonNegativeNumber);
  direct->add_option("--m", d_m, "Grunsky truncation for the predicted column (0: auto)");
  direct->add_flag("--json", d_json, "print the DirectResult JSON instead of a CSV row");

  auto* conv = app.add_subcommand("convergence", "sweep n, CSV of direct vs predicted");
  add_curve(conv, common, true);
  std::string c_range = "8..40";
  int c_m = kAutoM;
  std::string c_svg;
  conv->add_option("--n", c_range, "range a..b or list a,b,c");
  conv->add_option("--m", c_m, "Grunsky truncation (0: auto)");
  conv->add_option("--svg", c_svg, "write a residual-vs-n SVG polyline");

  auto* energy = app.add_subcommand("energy", "E_n(r) over a dilation grid with a convexity report");
  add_curve(energy, common, false);
  int e_n = 3;
  std::string e_r = "1.1:8:9";
  std::string e_svg;
  double e_tol = 1e-4;
  energy->add_option("--n", e_n, "matrix size")->check(CLI::PositiveNumber);
  energy->add_option("--r", e_r, "r list x,y,z or log range lo:hi:count");
  energy->add_option("--tol", e_tol, "convexity flag tolerance");
  energy->add_option("--svg", e_svg, "write an E-vs-r SVG polyline");

  auto* wp = app.add_subcommand("wp-check", "Hilbert-Schmidt norm of the Grunsky operator as r decreases to 1");
  add_curve(wp, common, false);
  int w_m = 64;
  std::string w_r = "2,1.5,1.2,1.1,1.05,1.02,1.01,1.005";
  wp->add_option("--m", w_m, "truncation size")->check(CLI::Range(1, 4096));
  wp->add_option("--r", w_r, "dilations, any order");

  auto* mc = app.add_subcommand("beta-mc", "Monte Carlo over the circular beta ensemble");
  add_curve(mc, common, true);
  ChainConfig cfg;
  long burn = -1;
  int seeds = 1;
  int mc_m = 0;
  mc->add_option("--n", cfg.n, "number of points")->check(CLI::PositiveNumber);
  mc->add_option("--beta", cfg.beta, "inverse temperature")->check(CLI::PositiveNumber);
  mc->add_option("--steps", cfg.steps, "sweeps including burn-in")->check(CLI::PositiveNumber);
  mc->add_option("--burn-in", burn, "burn-in sweeps (default steps/10)");
  mc->add_option("--seed", cfg.seed, "first seed");
  mc->add_option("--seeds", seeds, "number of independent chains")->check(CLI::PositiveNumber);
  mc->add_option("--m", mc_m, "Grunsky truncation (0: auto)")->check(CLI::NonNegativeNumber);
  mc->add_option("--width", cfg.proposal_width, "initial proposal width (radians)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    configure_workers_from_env();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    // Inputs first: anything thrown as ParseError here is a bad file or flag.
    const ExteriorMap map = load_curve(common.curve);
    const FourierSymbol sym = load_symbol(common.symbol);

    if (grunsky->parsed()) {
      const GrunskyTable table = g_radius > 0.0 ? grunsky_coefficients_sampled(map, g_m, g_radius)
                                                : grunsky_coefficients(map, g_m, g_order);
      const SpectralReport rep = spectral_report(operators(table), map);
      std::ostringstream csv;
      io::write_table_csv(csv, table);
      if (g_csv.empty()) out << csv.str();
      else write_text(g_csv, csv.str());
      const std::string report = io::to_json(rep).dump(2) + "\n";
      if (g_report.empty()) err << report;
      else write_text(g_report, report);
    } else if (predict->parsed()) {
      if (p_beta > 0.0) {
        const cplx limit = predict_beta_log(map, sym, p_n, p_beta, p_m);
        const double log_z = zn_beta_circle(p_n, p_beta);
        const double cap_term = (p_beta * p_n * (p_n - 1) / 2.0 + p_n) * std::log(map.cap());
        io::json j = {{"label", "experimental: conjectured beta-ensemble limit"},
                      {"n", p_n},
                      {"beta", p_beta},
                      {"log_limit", io::complex_to_json(limit)},
                      {"log_Zn_beta_circle", log_z},
                      {"cap_term", cap_term},
                      {"log_Dn_beta_estimate", io::complex_to_json(limit + log_z + cap_term)}};
        out << j.dump(2) << '\n';
      } else {
        out << io::to_json(predict_log_Dn(map, sym, p_n, p_m)).dump(2) << '\n';
      }
    } else if (direct->parsed()) {
      const DirectResult d = log_det_Dn(map, sym, d_n, d_N);
      if (d_json) {
        out << io::to_json(d).dump(2) << '\n';
      } else {
        const PredictionBreakdown p = predict_log_Dn(map, sym, d_n, d_m);
        out << io::kDirectCsvHeader << '\n';
        io::write_direct_csv_row(out, d, p.total_log.real(), residual_of(d.log_Dn, p.total_log));
      }
    } else if (conv->parsed()) {
      const std::vector<int> ns = parse_int_range(c_range);
      if (ns.front() < 1) throw ParseError("n must be >= 1");
      const int m_used = predict_log_Dn(map, sym, 1, c_m).m_used;
      std::vector<DirectResult> rows(ns.size());
      std::vector<PredictionBreakdown> preds(ns.size());
      std::vector<std::exception_ptr> errors(ns.size());
      const long count = static_cast<long>(ns.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(worker_count())
      for (long i = 0; i < count; ++i) {
        const auto u = static_cast<std::size_t>(i);
        try {
          rows[u] = log_det_Dn(map, sym, ns[u]);
          preds[u] = predict_log_Dn(map, sym, ns[u], m_used);
        } catch (...) {
          errors[u] = std::current_exception();
        }
      }
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
      out << io::kDirectCsvHeader << '\n';
      std::vector<double> xs, ys;
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const double res = residual_of(rows[i].log_Dn, preds[i].total_log);
        io::write_direct_csv_row(out, rows[i], preds[i].total_log.real(), res);
        xs.push_back(ns[i]);
        ys.push_back(res);
      }
      if (!c_svg.empty()) write_text(c_svg, io::svg_polyline(xs, ys, "residual vs n", true));
    } else if (energy->parsed()) {
      const EnergyCurve curve = finite_energy(map, e_n, parse_real_list(e_r));
      io::json j = {{"curve", io::to_json(curve)}};
      try {
        j["convexity"] = io::to_json(convexity_check(curve, e_tol));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GridTooCoarse) throw;
        j["convexity"] = nullptr;
        j["convexity_skipped"] = e.what();
      }
      out << j.dump(2) << '\n';
      if (!e_svg.empty()) write_text(e_svg, io::svg_polyline(curve.r_grid, curve.values, "E_n(r)"));
    } else if (wp->parsed()) {
      std::vector<double> rs = parse_real_list(w_r);
      std::sort(rs.begin(), rs.end(), std::greater<double>());
      const GrunskyTable table = grunsky_coefficients(map, w_m);
      const GrunskyTable table2 = grunsky_coefficients(map, 2 * w_m);
      io::json rows = io::json::array();
      double prev = 0.0;
      bool monotone = true;
      for (double r : rs) {
        const double hs = operators(dilated_table(table, r)).B.cwiseAbs2().sum();
        monotone = monotone && hs >= prev - 1e-12;
        prev = hs;
        rows.push_back({{"r", r}, {"hs_norm_sq", hs}});
      }
      const SpectralReport rep_m = spectral_report(operators(table), map);
      const double hs_m = rep_m.hs_norm_sq;
      const double hs_2m = operators(table2).B.cwiseAbs2().sum();
      const bool bounded = std::isfinite(hs_2m) && std::abs(hs_2m - hs_m) <= 1e-6 * std::max(1.0, hs_2m);
      io::json j = {{"m", w_m},
                    {"dilations", rows},
                    {"hs_norm_sq_m", hs_m},
                    {"hs_norm_sq_2m", hs_2m},
                    {"kappa_hat", rep_m.kappa_hat},
                    {"monotone_in_r", monotone},
                    {"verdict", bounded ? "bounded: Hilbert-Schmidt Grunsky operator (Weil-Petersson class)"
                                        : "unresolved: Hilbert-Schmidt norm still growing with m"}};
      out << j.dump(2) << '\n';
    } else if (mc->parsed()) {
      cfg.burn_in = burn >= 0 ? burn : cfg.steps / 10;
      if (cfg.proposal_width > M_PI) cfg.proposal_width = M_PI;
      validate(cfg);
      if (sym.a0 != cplx{}) err << "warning: symbol has a0 != 0\n";
      std::vector<std::uint64_t> list(static_cast<std::size_t>(seeds));
      std::iota(list.begin(), list.end(), cfg.seed);
      const auto results = estimate_ratio_seeds(map, sym, cfg, list, mc_m);
      out << io::kBetaCsvHeader << '\n';
      for (const auto& r : results) {
        io::write_beta_csv_row(out, r);
        if (r.heavy_tail) err << "warning: heavy-tailed weights for seed " << r.seed << "; estimate unreliable\n";
      }
      if (cfg.beta != 2.0) err << "note: beta != 2 comparisons are exploratory\n";
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace szego::cli
