#include "gravidec/quantities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

#include "gravidec/error.hpp"
#include "gravidec/keyvalue.hpp"

namespace gravidec {

namespace {

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

ScenarioPreset touching_pair(std::string name, double sphere_mass, double density) {
  const double r = std::cbrt(3.0 * sphere_mass / (4.0 * std::numbers::pi * density));
  return {std::move(name), sphere_mass, sphere_mass, 2.0 * r, r, 2.7, 1e-34};
}

}  // namespace

void validate(const PhysicalConstants& k) {
  if (!positive(k.G) || !positive(k.c) || !positive(k.hbar) || !positive(k.k_B))
    throw InvalidArgument("physical constants must be finite and positive");
}

double planck_mass(const PhysicalConstants& k) { return std::sqrt(k.hbar * k.c / k.G); }

double planck_length(const PhysicalConstants& k) {
  return std::sqrt(k.hbar * k.G / (k.c * k.c * k.c));
}

double compton_length(double m, const PhysicalConstants& k) {
  if (!positive(m)) throw InvalidArgument("compton_length: mass must be positive");
  return k.hbar / (m * k.c);
}

void validate(const ScenarioPreset& p) {
  if (p.name.empty()) throw InvalidArgument("scenario preset needs a name");
  if (!positive(p.m_a) || !positive(p.m_b) || !positive(p.rho) || !positive(p.r) ||
      !positive(p.T_em) || !positive(p.chh_at_2omega))
    throw InvalidArgument("scenario preset '" + p.name +
                          "': all physical fields must be positive");
}

Catalog Catalog::builtin() {
  Catalog c;
  c.add({"moon", 5.972e24, 7.346e22, 3.844e8, 1.737e6, 2.7, 1e-34});
  c.add(touching_pair("metal_pair", 500.0, 8000.0));
  return c;
}

Catalog Catalog::from_environment() {
  Catalog c = builtin();
  if (const char* path = std::getenv("GRAVIDEC_CATALOG"); path && *path) c.load_file(path);
  return c;
}

void Catalog::load_file(const std::filesystem::path& path) {
  const KeyValueFile file = load_key_value(path);
  static const std::set<std::string> required{"m_a", "m_b", "rho", "r", "T_em", "chh"};
  for (const auto& name : file.section_order) {
    if (name.empty()) {
      if (!file.sections.at(name).empty())
        throw InvalidArgument(path.string() + ": keys outside a [preset] section");
      continue;
    }
    ScenarioPreset p{name, 0, 0, 0, 0, 0, 0};
    std::set<std::string> seen;
    for (const auto& [key, value] : file.sections.at(name)) {
      if (!required.count(key))
        throw LookupError(path.string() + ": [" + name + "] unknown key '" + key + "'");
      const double v = parse_double(value, name + "." + key);
      seen.insert(key);
      if (key == "m_a") p.m_a = v;
      else if (key == "m_b") p.m_b = v;
      else if (key == "rho") p.rho = v;
      else if (key == "r") p.r = v;
      else if (key == "T_em") p.T_em = v;
      else p.chh_at_2omega = v;
    }
    for (const auto& key : required)
      if (!seen.count(key))
        throw InvalidArgument(path.string() + ": [" + name + "] missing key '" + key + "'");
    add(std::move(p));
  }
}

void Catalog::add(ScenarioPreset preset) {
  validate(preset);
  if (contains(preset.name))
    throw InvalidArgument("duplicate scenario preset '" + preset.name + "'");
  presets_.push_back(std::move(preset));
}

const ScenarioPreset& Catalog::get(std::string_view name) const {
  auto it = std::find_if(presets_.begin(), presets_.end(),
                         [&](const ScenarioPreset& p) { return p.name == name; });
  if (it != presets_.end()) return *it;
  std::string list;
  for (const auto& n : names()) list += (list.empty() ? "" : ", ") + n;
  throw LookupError("unknown scenario '" + std::string(name) + "'; available: " + list);
}

bool Catalog::contains(std::string_view name) const {
  return std::any_of(presets_.begin(), presets_.end(),
                     [&](const ScenarioPreset& p) { return p.name == name; });
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& p : presets_) out.push_back(p.name);
  return out;
}

const ScenarioPreset& catalog_get(std::string_view name) {
  static const Catalog catalog = Catalog::builtin();
  return catalog.get(name);
}

}  // namespace gravidec
