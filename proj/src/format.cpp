#include "gravidec/format.hpp"

#include <fmt/format.h>

#include <cmath>

namespace gravidec {

namespace {

std::string non_finite(double x) {
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_full(double x) {
  if (!std::isfinite(x)) return non_finite(x);
  return fmt::format("{:.16e}", x);
}

std::string format_short(double x) {
  if (!std::isfinite(x)) return non_finite(x);
  return fmt::format("{:.5e}", x);
}

}  // namespace gravidec
