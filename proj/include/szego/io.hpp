#pragma once

#include <json.hpp>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "szego/direct.hpp"
#include "szego/grunsky.hpp"
#include "szego/mcbeta.hpp"
#include "szego/predict.hpp"
#include "szego/symbol.hpp"

namespace szego::io {

using json = nlohmann::json;

/// Malformed or unreadable input (as opposed to a numerical failure).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "%.17g"
std::string fmt(double x);

json read_json_file(const std::string& path);

json complex_to_json(cplx c);
cplx complex_from_json(const json& j);

/// {"cap":..., "phi0":[re,im], "tail":[[re,im],...]}; validated with make_map.
ExteriorMap curve_from_json(const json& j);
json curve_to_json(const ExteriorMap& map);

/// {"a0":..., "a":[...], "b":[...]} or {"theta_samples":[...]}.
FourierSymbol symbol_from_json(const json& j);
json symbol_to_json(const FourierSymbol& sym);

json to_json(const SpectralReport& r);
SpectralReport spectral_report_from_json(const json& j);

json to_json(const PredictionBreakdown& p);
PredictionBreakdown prediction_from_json(const json& j);

json to_json(const DirectResult& d);
DirectResult direct_result_from_json(const json& j);

json to_json(const EnergyCurve& e);
EnergyCurve energy_curve_from_json(const json& j);

json to_json(const ConvexityReport& c);

json to_json(const BetaEstimate& b);

/// "k,l,re_a,im_a", row-major.
void write_table_csv(std::ostream& os, const GrunskyTable& table);
GrunskyTable read_table_csv(std::istream& is);

inline constexpr const char* kDirectCsvHeader = "n,N_nodes,log_Dn_re,log_Dn_im,predicted,residual,converged";
void write_direct_csv_row(std::ostream& os, const DirectResult& d, double predicted, double residual);

inline constexpr const char* kBetaCsvHeader = "seed,mean_log,std_error,ess,acceptance";
void write_beta_csv_row(std::ostream& os, const BetaEstimate& b);

/// Minimal standalone SVG with one polyline through (x, y).
std::string svg_polyline(const std::vector<double>& x, const std::vector<double>& y, const std::string& title,
                         bool log_y = false);

}  // namespace szego::io
