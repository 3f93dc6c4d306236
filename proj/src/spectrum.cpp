#include "gravidec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "gravidec/error.hpp"
#include "gravidec/keyvalue.hpp"

namespace gravidec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

void check_tabulated(const std::vector<std::pair<double, double>>& knots) {
  if (knots.empty()) throw InvalidArgument("tabulated spectrum needs at least one knot");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto [w, c] = knots[i];
    if (!(w > 0.0) || !std::isfinite(w))
      throw InvalidArgument("tabulated spectrum: knot " + std::to_string(i) +
                            " has non-positive frequency");
    if (!(c >= 0.0) || !std::isfinite(c))
      throw InvalidArgument("tabulated spectrum: knot " + std::to_string(i) +
                            " has negative level");
    if (i > 0 && !(w > knots[i - 1].first))
      throw InvalidArgument("tabulated spectrum: knot " + std::to_string(i) +
                            " is not strictly increasing in frequency");
  }
}

double interpolate(const std::vector<std::pair<double, double>>& knots, double w) {
  auto hi = std::lower_bound(knots.begin(), knots.end(), w,
                             [](const auto& k, double x) { return k.first < x; });
  if (hi->first == w) return hi->second;
  auto lo = hi - 1;
  const auto [x0, y0] = *lo;
  const auto [x1, y1] = *hi;
  double y;
  if (y0 > 0.0 && y1 > 0.0) {
    const double s = (std::log(w) - std::log(x0)) / (std::log(x1) - std::log(x0));
    y = std::exp(std::log(y0) + s * (std::log(y1) - std::log(y0)));
  } else {
    y = y0 + (w - x0) / (x1 - x0) * (y1 - y0);
  }
  return std::clamp(y, std::min(y0, y1), std::max(y0, y1));
}

}  // namespace

GwSpectrum GwSpectrum::flat_band(double level, double omega_min, double omega_max) {
  if (!(level >= 0.0) || !std::isfinite(level))
    throw InvalidArgument("flat band: level must be non-negative");
  if (!(omega_min >= 0.0) || !(omega_max > omega_min) || !std::isfinite(omega_max))
    throw InvalidArgument("flat band: need 0 <= omega_min < omega_max");
  return GwSpectrum(FlatBand{level, omega_min, omega_max});
}

GwSpectrum GwSpectrum::power_law(double level_at_ref, double omega_ref, double exponent) {
  if (!(level_at_ref >= 0.0) || !std::isfinite(level_at_ref))
    throw InvalidArgument("power law: level must be non-negative");
  if (!(omega_ref > 0.0) || !std::isfinite(exponent))
    throw InvalidArgument("power law: reference frequency must be positive");
  return GwSpectrum(PowerLaw{level_at_ref, omega_ref, exponent});
}

GwSpectrum GwSpectrum::flat(double level) { return power_law(level, 1.0, 0.0); }

GwSpectrum GwSpectrum::tabulated(std::vector<std::pair<double, double>> knots) {
  check_tabulated(knots);
  return GwSpectrum(Tabulated{std::move(knots)});
}

bool GwSpectrum::defined_at(double omega) const {
  const double w = std::abs(omega);
  if (!std::isfinite(w)) return false;
  return std::visit(
      overloaded{
          [&](const FlatBand& f) { return w >= f.omega_min && w <= f.omega_max; },
          [&](const PowerLaw& p) { return w > 0.0 || p.exponent >= 0.0; },
          [&](const Tabulated& t) {
            return w >= t.knots.front().first && w <= t.knots.back().first;
          },
      },
      model_);
}

double GwSpectrum::evaluate(double omega) const {
  if (!defined_at(omega))
    throw DomainError("spectrum not defined at omega = " + num(omega) + " rad/s (domain " +
                      num(support().lo) + " .. " + num(support().hi) + ")");
  const double w = std::abs(omega);
  return std::visit(
      overloaded{
          [&](const FlatBand& f) { return f.level; },
          [&](const PowerLaw& p) {
            if (p.exponent == 0.0) return p.level_at_ref;
            return p.level_at_ref * std::pow(w / p.omega_ref, p.exponent);
          },
          [&](const Tabulated& t) { return interpolate(t.knots, w); },
      },
      model_);
}

Band GwSpectrum::support() const {
  return std::visit(
      overloaded{
          [](const FlatBand& f) { return Band{f.omega_min, f.omega_max}; },
          [](const PowerLaw&) { return Band{}; },
          [](const Tabulated& t) { return Band{t.knots.front().first, t.knots.back().first}; },
      },
      model_);
}

GwSpectrum GwSpectrum::in_time_unit(double tau) const {
  if (!(tau > 0.0)) throw InvalidArgument("time unit must be positive");
  return std::visit(
      overloaded{
          [&](const FlatBand& f) {
            return GwSpectrum(FlatBand{f.level / tau, f.omega_min * tau, f.omega_max * tau});
          },
          [&](const PowerLaw& p) {
            return GwSpectrum(PowerLaw{p.level_at_ref / tau, p.omega_ref * tau, p.exponent});
          },
          [&](const Tabulated& t) {
            Tabulated s = t;
            for (auto& [w, c] : s.knots) {
              w *= tau;
              c /= tau;
            }
            return GwSpectrum(std::move(s));
          },
      },
      model_);
}

double spectrum_energy_factor(const PhysicalConstants& k) {
  return 16.0 * k.G / (5.0 * std::pow(k.c, 5));
}

double chh_to_temperature(double chh, const PhysicalConstants& k) {
  if (!(chh >= 0.0)) throw InvalidArgument("chh_to_temperature: spectrum must be non-negative");
  return 5.0 * std::pow(k.c, 5) * chh / (16.0 * k.G * k.k_B);
}

double temperature_to_chh(double T_gr, const PhysicalConstants& k) {
  if (!(T_gr >= 0.0)) throw InvalidArgument("temperature_to_chh: temperature must be non-negative");
  return spectrum_energy_factor(k) * k.k_B * T_gr;
}

double chh_vacuum(double omega, const PhysicalConstants& k) {
  return 0.5 * (spectrum_energy_factor(k) * k.hbar * omega);
}

double graviton_number(double chh, double omega, const PhysicalConstants& k) {
  if (!(omega > 0.0)) throw InvalidArgument("graviton_number: omega must be positive");
  const double quantum = spectrum_energy_factor(k) * k.hbar * omega;
  if (!(chh >= 0.5 * quantum))
    throw SubVacuumError("spectrum level " + num(chh) + " /Hz is below the vacuum level " +
                         num(0.5 * quantum) + " /Hz at omega = " + num(omega) + " rad/s");
  return chh / quantum - 0.5;
}

BackgroundThermodynamics thermodynamics(double chh, double omega, const PhysicalConstants& k) {
  return {chh_to_temperature(chh, k), graviton_number(chh, omega, k), omega};
}

GwSpectrum parse_tabulated_spectrum(std::istream& in) {
  std::vector<std::pair<double, double>> knots;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string body = line.substr(first);
    auto last = body.find_last_not_of(" \t");
    body = body.substr(0, last + 1);
    if (body.front() == '(') {
      if (body.back() != ')') throw ParseError("unbalanced parenthesis", lineno);
      body = body.substr(1, body.size() - 2);
    }
    const auto comma = body.find(',');
    if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos)
      throw ParseError("expected two comma-separated numbers", lineno);
    double w, c;
    try {
      w = parse_double(body.substr(0, comma), "omega");
      c = parse_double(body.substr(comma + 1), "chh");
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), lineno);
    }
    if (!(w > 0.0)) throw ParseError("row " + std::to_string(knots.size()) +
                                         ": frequency must be positive", lineno);
    if (!(c >= 0.0)) throw ParseError("row " + std::to_string(knots.size()) +
                                          ": negative spectrum level", lineno);
    if (!knots.empty() && !(w > knots.back().first))
      throw ParseError("row " + std::to_string(knots.size()) +
                           ": frequencies must be strictly increasing", lineno);
    knots.emplace_back(w, c);
  }
  if (knots.empty()) throw ParseError("spectrum table has no data rows", lineno);
  return GwSpectrum::tabulated(std::move(knots));
}

GwSpectrum load_tabulated_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open spectrum file " + path.string());
  return parse_tabulated_spectrum(in);
}

}  // namespace gravidec
