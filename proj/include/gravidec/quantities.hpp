#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gravidec {

/// Unit-bearing constants, SI throughout.
struct PhysicalConstants {
  double G;      // m^3 kg^-1 s^-2
  double c;      // m s^-1
  double hbar;   // J s
  double k_B;    // J K^-1
};

/// CODATA 2018 recommended values (c, hbar and k_B exact by SI definition).
inline constexpr PhysicalConstants codata2018{
    6.67430e-11,
    299792458.0,
    1.054571817e-34,
    1.380649e-23,
};

/// Throws InvalidArgument unless all four constants are finite and positive.
void validate(const PhysicalConstants& k);

/// sqrt(hbar c / G).
double planck_mass(const PhysicalConstants& k = codata2018);

/// sqrt(hbar G / c^3).
double planck_length(const PhysicalConstants& k = codata2018);

/// hbar / (m c); rejects m <= 0.
double compton_length(double m, const PhysicalConstants& k = codata2018);

/// A named physical configuration: two bodies on a circular orbit, the
/// photon bath around them and the gravitational background level at the
/// orbit's quadrupole frequency.
struct ScenarioPreset {
  std::string name;
  double m_a;            // kg
  double m_b;            // kg, the orbiter (radius r)
  double rho;            // separation, m
  double r;              // orbiter radius, m
  double T_em;           // K
  double chh_at_2omega;  // Hz^-1
};

void validate(const ScenarioPreset& p);

/// Read-only set of presets. The built-in entries are
///
///   moon       Earth-Moon system. IAU nominal masses, mean distance and
///              mean lunar radius; CMB temperature and a background level of
///              1e-34 / Hz. The background level is the conservative of the
///              published binary-confusion estimates, which span
///              10^-34.5 .. 10^-33 / Hz near 1 uHz.
///   metal_pair two touching 500 kg spheres of density 8000 kg/m^3 in the
///              CMB with the same background level.
class Catalog {
public:
  /// Built-in presets only.
  static Catalog builtin();

  /// Built-in presets plus the entries of the file named by the
  /// GRAVIDEC_CATALOG environment variable, when set.
  static Catalog from_environment();

  /// Adds every section of a key/value scenario file. Sections are preset
  /// names; keys are m_a, m_b, rho, r, T_em, chh.
  void load_file(const std::filesystem::path& path);

  void add(ScenarioPreset preset);

  /// Throws LookupError naming the available presets.
  const ScenarioPreset& get(std::string_view name) const;

  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;
  const std::vector<ScenarioPreset>& presets() const { return presets_; }

private:
  std::vector<ScenarioPreset> presets_;
};

/// Lookup in the built-in catalog.
const ScenarioPreset& catalog_get(std::string_view name);

}  // namespace gravidec
