#include "cslab/numfmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace cslab {

std::string format_sig6(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  // The exponent after rounding to 6 significant digits decides how many
  // decimals fixed notation needs.
  char sci[32];
  std::snprintf(sci, sizeof sci, "%.5e", v);
  const int exponent = std::atoi(std::strchr(sci, 'e') + 1);
  const int decimals = exponent >= 5 ? 0 : 5 - exponent;
  char buf[400];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string out(buf);
  if (out == "-0" || out.find_first_not_of("-0.") == std::string::npos) return "0";
  return out;
}

double parse_number(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("parse_number: not a number '" + std::string(text) + "'");
  }
  return v;
}

double round_sig6(double v) { return parse_number(format_sig6(v)); }

}  // namespace cslab
