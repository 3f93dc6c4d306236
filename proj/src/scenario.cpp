#include "gravidec/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gravidec/error.hpp"
#include "gravidec/keyvalue.hpp"

namespace gravidec {

ScenarioParams scenario_from_preset(const ScenarioPreset& p) {
  ScenarioParams s;
  s.name = p.name;
  s.m_a = p.m_a;
  s.m_b = p.m_b;
  s.rho = p.rho;
  s.r = p.r;
  s.T_em = p.T_em;
  s.chh = p.chh_at_2omega;
  return s;
}

const std::vector<std::string>& numeric_scenario_keys() {
  static const std::vector<std::string> keys{"m_a", "m_b",     "rho",     "r",
                                             "T_em", "chh",    "a",       "spectral_index",
                                             "density", "m_total"};
  return keys;
}

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = [] {
    auto k = numeric_scenario_keys();
    k.push_back("geometry");
    k.push_back("spectrum_file");
    return k;
  }();
  return keys;
}

bool is_scenario_key(const std::string& key) {
  const auto& keys = scenario_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void apply_override(ScenarioParams& s, const std::string& key, double v) {
  if (key == "m_a") s.m_a = v;
  else if (key == "m_b") s.m_b = v;
  else if (key == "rho") s.rho = v;
  else if (key == "r") s.r = v;
  else if (key == "T_em") s.T_em = v;
  else if (key == "chh") s.chh = v;
  else if (key == "a") s.a = v;
  else if (key == "spectral_index") s.spectral_index = v;
  else if (key == "density") s.density = v;
  else if (key == "m_total") s.m_total = v;
  else throw LookupError("unknown numeric scenario parameter '" + key + "'");
}

void apply_override(ScenarioParams& s, const std::string& key, const std::string& value) {
  if (key == "geometry") {
    if (value == "orbit") s.geometry = Geometry::orbit;
    else if (value == "touching") s.geometry = Geometry::touching;
    else throw InvalidArgument("geometry must be 'orbit' or 'touching', got '" + value + "'");
  } else if (key == "spectrum_file") {
    s.spectrum_file = value;
  } else if (is_scenario_key(key)) {
    apply_override(s, key, parse_double(value, key));
  } else {
    throw LookupError("unknown scenario parameter '" + key + "'");
  }
}

ResolvedScenario resolve(const ScenarioParams& s, const PhysicalConstants& k) {
  if ((s.density || s.m_total) && s.geometry != Geometry::touching)
    throw InvalidArgument("density and m_total need geometry=touching");
  if (s.a && !(*s.a >= 0.0)) throw InvalidArgument("acceleration override must be >= 0");

  TwoBodyOrbit orbit{};
  double r = s.r;
  if (s.geometry == Geometry::touching) {
    const double density =
        s.density.value_or(s.m_b / (4.0 / 3.0 * std::numbers::pi * s.r * s.r * s.r));
    const TouchingSpheres pair = touching_spheres(s.m_total.value_or(s.m_a + s.m_b), density, k);
    orbit = pair.orbit;
    r = pair.sphere_radius;
  } else {
    orbit = orbit_from_masses_separation(s.m_a, s.m_b, s.rho, 0.0, k);
  }
  if (!(r > 0.0)) throw InvalidArgument("orbiter radius must be positive");
  if (!(s.T_em > 0.0)) throw InvalidArgument("T_em must be positive");

  std::optional<GwSpectrum> spectrum;
  if (s.spectrum_file) {
    spectrum = load_tabulated_spectrum(*s.spectrum_file);
  } else if (s.spectral_index) {
    spectrum = GwSpectrum::power_law(s.chh, 2.0 * orbit.Omega, *s.spectral_index);
  } else {
    spectrum = GwSpectrum::flat(s.chh);
  }
  if (s.a) orbit.a = *s.a;
  return {s.name, orbit, r, s.T_em, *spectrum, s.a};
}

DecoherenceReport evaluate(const ResolvedScenario& sc, const PhysicalConstants& k) {
  return decoherence_report(sc.name, sc.orbit, sc.r, sc.T_em, sc.spectrum, sc.a, k);
}

}  // namespace gravidec
