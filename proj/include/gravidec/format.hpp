#pragma once

#include <string>

namespace gravidec {

/// Scientific notation with 17 significant digits; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_full(double x);

/// Scientific notation with 6 significant digits, for tables.
std::string format_short(double x);

}  // namespace gravidec
