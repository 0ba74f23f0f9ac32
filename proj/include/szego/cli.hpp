#pragma once

#include <iosfwd>
#include <string>

#include "szego/series.hpp"
#include "szego/symbol.hpp"

namespace szego::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point of the szego command line tool. Output goes to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// "builtin:NAME" or a curve JSON path.
ExteriorMap load_curve(const std::string& source);
/// Empty path: the zero symbol.
FourierSymbol load_symbol(const std::string& path);

/// "a..b", "a" or "a,b,c".
std::vector<int> parse_int_range(const std::string& text);
/// "x,y,z" or "lo:hi:count" (log-spaced).
std::vector<double> parse_real_list(const std::string& text);

}  // namespace szego::cli
