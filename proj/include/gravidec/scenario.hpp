#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gravidec/orbit.hpp"
#include "gravidec/quantities.hpp"
#include "gravidec/rates.hpp"
#include "gravidec/spectrum.hpp"

namespace gravidec {

enum class Geometry { orbit, touching };

/// A preset plus command-line overrides, before derived quantities exist.
struct ScenarioParams {
  std::string name;
  double m_a = 0.0;
  double m_b = 0.0;
  double rho = 0.0;
  double r = 0.0;
  double T_em = 0.0;
  double chh = 0.0;
  std::optional<double> a;
  std::optional<double> spectral_index;
  std::optional<std::string> spectrum_file;
  Geometry geometry = Geometry::orbit;
  std::optional<double> density;  // touching geometry only
  std::optional<double> m_total;  // touching geometry only
};

ScenarioParams scenario_from_preset(const ScenarioPreset& preset);

/// Keys accepted by apply_override.
const std::vector<std::string>& scenario_keys();
/// Keys whose values are numbers and can be swept.
const std::vector<std::string>& numeric_scenario_keys();
bool is_scenario_key(const std::string& key);

/// Throws LookupError for an unknown key, InvalidArgument for a bad value.
void apply_override(ScenarioParams& params, const std::string& key, const std::string& value);
void apply_override(ScenarioParams& params, const std::string& key, double value);

struct ResolvedScenario {
  std::string name;
  TwoBodyOrbit orbit;
  double r;
  double T_em;
  GwSpectrum spectrum;
  std::optional<double> a;
};

/// Builds the orbit (Kepler, or touching spheres of the given density) and
/// the background spectrum: a table from spectrum_file, a power law through
/// chh at 2 Omega when spectral_index is set, otherwise flat at chh.
ResolvedScenario resolve(const ScenarioParams& params, const PhysicalConstants& k = codata2018);

DecoherenceReport evaluate(const ResolvedScenario& scenario,
                           const PhysicalConstants& k = codata2018);

}  // namespace gravidec
