#pragma once

#include <string>
#include <string_view>

namespace cslab {

/// Fixed notation with 6 significant digits ("0.00123457", "123457", "60.0000").
/// Non-finite values become "inf", "-inf" or "nan".
std::string format_sig6(double v);

/// Inverse of format_sig6 for every string it produces.
double parse_number(std::string_view text);

/// The value a reader recovers after format_sig6: parse_number(format_sig6(v)).
double round_sig6(double v);

}  // namespace cslab
