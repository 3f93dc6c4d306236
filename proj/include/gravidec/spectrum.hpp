#pragma once

#include <filesystem>
#include <istream>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "gravidec/quantities.hpp"

namespace gravidec {

/// Closed interval of |omega| in rad/s.
struct Band {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  double width() const { return hi - lo; }
  bool contains(double abs_omega) const { return abs_omega >= lo && abs_omega <= hi; }
};

/// Two-sided spectrum C_hh[omega] of the circular polarization, in Hz^-1 (s).
/// Every model is even in omega; evaluation outside the model domain throws
/// DomainError instead of extrapolating.
class GwSpectrum {
public:
  /// Constant level for lo <= |omega| <= hi.
  struct FlatBand {
    double level;
    double omega_min;
    double omega_max;
  };
  /// level_at_ref * (|omega| / omega_ref)^exponent for omega != 0.
  struct PowerLaw {
    double level_at_ref;
    double omega_ref;
    double exponent;
  };
  /// Knots (omega, chh) with strictly increasing positive omega, log-log
  /// interpolation in between.
  struct Tabulated {
    std::vector<std::pair<double, double>> knots;
  };
  using Model = std::variant<FlatBand, PowerLaw, Tabulated>;

  static GwSpectrum flat_band(double level, double omega_min, double omega_max);
  static GwSpectrum power_law(double level_at_ref, double omega_ref, double exponent);
  /// Flat everywhere: a power law with exponent zero.
  static GwSpectrum flat(double level);
  static GwSpectrum tabulated(std::vector<std::pair<double, double>> knots);

  double evaluate(double omega) const;
  double operator()(double omega) const { return evaluate(omega); }

  /// Range of |omega| where evaluate is defined.
  Band support() const;
  bool defined_at(double omega) const;

  /// Same spectrum expressed with time unit `tau` seconds: frequencies are
  /// multiplied by tau and levels divided by it.
  GwSpectrum in_time_unit(double tau) const;

  const Model& model() const { return model_; }

private:
  explicit GwSpectrum(Model m) : model_(std::move(m)) {}
  Model model_;
};

struct BackgroundThermodynamics {
  double T_gr;   // K
  double n_gr;   // gravitons per mode
  double omega;  // rad/s
};

/// 16 G / (5 c^5): C_hh per unit energy k_B T.
double spectrum_energy_factor(const PhysicalConstants& k = codata2018);

double chh_to_temperature(double chh, const PhysicalConstants& k = codata2018);
double temperature_to_chh(double T_gr, const PhysicalConstants& k = codata2018);

/// Level of the zero-point (n = 0) spectrum at omega.
double chh_vacuum(double omega, const PhysicalConstants& k = codata2018);

/// chh / (16 G hbar omega / 5c^5) - 1/2; throws SubVacuumError below vacuum.
double graviton_number(double chh, double omega, const PhysicalConstants& k = codata2018);

BackgroundThermodynamics thermodynamics(double chh, double omega,
                                        const PhysicalConstants& k = codata2018);

/// Text table: one `omega, chh` record per line, optionally parenthesised;
/// blank lines and lines starting with '#' are skipped.
GwSpectrum parse_tabulated_spectrum(std::istream& in);
GwSpectrum load_tabulated_spectrum(const std::filesystem::path& path);

}  // namespace gravidec
