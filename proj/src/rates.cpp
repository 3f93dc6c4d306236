#include "gravidec/rates.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>

#include "gravidec/error.hpp"

namespace gravidec {

namespace {

std::mutex warning_mutex;
WarningHandler warning_handler = [](const std::string& msg) {
  std::cerr << "warning: " << msg << '\n';
};

void warn(const std::string& msg) {
  std::lock_guard lock(warning_mutex);
  if (warning_handler) warning_handler(msg);
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw InvalidArgument(std::string(what) + " must be positive");
}

void require_non_negative(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw InvalidArgument(std::string(what) + " must be non-negative");
}

double pow4(double x) {
  const double x2 = x * x;
  return x2 * x2;
}

std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(warning_mutex);
  std::swap(handler, warning_handler);
  return handler;
}

double grav_damping_rate(double m, double a, const PhysicalConstants& k) {
  require_positive(m, "mass");
  require_non_negative(a, "acceleration");
  return 32.0 * k.G * m * a * a / (5.0 * std::pow(k.c, 5));
}

double grav_diffusion(double m, double a, double chh_at_2omega, const PhysicalConstants&) {
  require_positive(m, "mass");
  require_non_negative(a, "acceleration");
  require_non_negative(chh_at_2omega, "spectrum level");
  return 2.0 * m * m * a * a * chh_at_2omega;
}

double thermal_wavelength(double T, const PhysicalConstants& k) {
  require_positive(T, "temperature");
  return k.hbar * k.c / (k.k_B * T);
}

double em_damping_rate(double m, double r, double T_em, const PhysicalConstants& k) {
  require_positive(m, "mass");
  require_positive(r, "radius");
  require_positive(T_em, "temperature");
  const double lambda = thermal_wavelength(T_em, k);
  if (r < 10.0 * lambda)
    warn("sphere radius " + sci(r) + " m is below ten thermal wavelengths (" +
         sci(10.0 * lambda) + " m); radiation-pressure damping is unreliable");
  const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  return 4.0 * pi3 * k.hbar * r * r / (45.0 * m) * pow4(k.k_B * T_em / (k.hbar * k.c));
}

double decoherence_rate(double D, const PhysicalConstants& k) {
  require_non_negative(D, "diffusion coefficient");
  return D / (k.hbar * k.hbar);
}

double decoherence_time(double Lambda, double delta_x) {
  require_positive(Lambda, "decoherence rate");
  require_positive(delta_x, "separation");
  return 1.0 / (Lambda * delta_x * delta_x);
}

GravChannel grav_channel(double m, double a, double chh_at_2omega, const PhysicalConstants& k) {
  GravChannel g{};
  g.Gamma_gr = grav_damping_rate(m, a, k);
  g.D_gr = grav_diffusion(m, a, chh_at_2omega, k);
  g.Lambda_gr = decoherence_rate(g.D_gr, k);
  g.T_gr = chh_to_temperature(chh_at_2omega, k);
  return g;
}

EmChannel em_channel(double m, double r, double T_em, const PhysicalConstants& k) {
  EmChannel e{};
  e.Gamma_em = em_damping_rate(m, r, T_em, k);
  e.D_em = m * e.Gamma_em * k.k_B * T_em;
  e.Lambda_em = decoherence_rate(e.D_em, k);
  e.T_em = T_em;
  e.r = r;
  return e;
}

double ratio_direct(const GravChannel& grav, const EmChannel& em) {
  if (!(em.Gamma_em > 0.0) || !(em.T_em > 0.0))
    throw InvalidArgument("ratio_direct: photon channel rate and temperature must be positive");
  return (grav.Gamma_gr / em.Gamma_em) * (grav.T_gr / em.T_em);
}

double ratio_dimensionless(double m, double rho, double r, double Omega, double T_em,
                           double T_gr, const PhysicalConstants& k) {
  require_positive(m, "mass");
  require_positive(rho, "separation");
  require_positive(r, "radius");
  require_positive(Omega, "orbital frequency");
  require_positive(T_em, "photon temperature");
  require_positive(T_gr, "gravitational temperature");
  const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
  const double mass = m / planck_mass(k);
  const double geometry = rho / r;
  const double occupation = k.hbar * Omega / (k.k_B * T_em);
  return (72.0 / pi3) * (mass * mass) * (geometry * geometry) * pow4(occupation) *
         (T_gr / T_em);
}

std::vector<std::pair<std::string, double>> standard_separations(const PhysicalConstants& k) {
  return {{"planck_length", planck_length(k)}, {"1fm", 1e-15}, {"1angstrom", 1e-10}};
}

double DecoherenceReport::t_dec_at(double delta_x) const {
  if (grav.Lambda_gr == 0.0) return std::numeric_limits<double>::infinity();
  return decoherence_time(grav.Lambda_gr, delta_x);
}

DecoherenceReport decoherence_report(const std::string& scenario, const TwoBodyOrbit& orbit,
                                     double orbiter_radius, double T_em,
                                     const GwSpectrum& background,
                                     std::optional<double> acceleration,
                                     const PhysicalConstants& k) {
  DecoherenceReport rep{};
  rep.scenario = scenario;
  rep.m = orbit.m;
  rep.M = orbit.M;
  rep.rho = orbit.rho;
  rep.Omega = orbit.Omega;
  rep.a = acceleration.value_or(orbit.a);
  rep.chh_at_2omega = background.evaluate(2.0 * orbit.Omega);
  rep.n_gr = graviton_number(rep.chh_at_2omega, 2.0 * orbit.Omega, k);
  rep.grav = grav_channel(orbit.m, rep.a, rep.chh_at_2omega, k);
  rep.em = em_channel(orbit.m, orbiter_radius, T_em, k);
  rep.ratio_direct = ratio_direct(rep.grav, rep.em);
  if (rep.a > 0.0 && rep.grav.T_gr > 0.0) {
    const double omega_a = std::sqrt(rep.a / orbit.rho);
    rep.ratio_dimensionless =
        ratio_dimensionless(orbit.m, orbit.rho, orbiter_radius, omega_a, T_em, rep.grav.T_gr, k);
  } else {
    rep.ratio_dimensionless = 0.0;
  }
  for (const auto& [label, dx] : standard_separations(k)) {
    rep.times.push_back({label, dx, rep.t_dec_at(dx), decoherence_time(rep.em.Lambda_em, dx)});
  }
  return rep;
}

TouchingSpheres touching_spheres(double m_total, double density, const PhysicalConstants& k) {
  require_positive(m_total, "total mass");
  require_positive(density, "density");
  const double sphere = 0.5 * m_total;
  const double r = std::cbrt(3.0 * sphere / (4.0 * std::numbers::pi * density));
  return {m_total, r, orbit_from_masses_separation(sphere, sphere, 2.0 * r, 0.0, k)};
}

double touching_spheres_ratio(double m_total, double density, double T_em,
                              const GwSpectrum& background, const PhysicalConstants& k) {
  const TouchingSpheres pair = touching_spheres(m_total, density, k);
  const double T_gr = chh_to_temperature(background.evaluate(2.0 * pair.orbit.Omega), k);
  return ratio_dimensionless(pair.orbit.m, pair.orbit.rho, pair.sphere_radius, pair.orbit.Omega,
                             T_em, T_gr, k);
}

CrossoverResult crossover_mass(double density, double T_em, const GwSpectrum& background,
                               const PhysicalConstants& k, double m_lo, double m_hi) {
  require_positive(density, "density");
  require_positive(T_em, "photon temperature");
  if (!(m_lo > 0.0) || !(m_hi > m_lo))
    throw InvalidArgument("crossover_mass: bracket must satisfy 0 < m_lo < m_hi");

  const double x_lo = std::log10(m_lo);
  const double x_hi = std::log10(m_hi);
  auto log_ratio = [&](double x) {
    return std::log(touching_spheres_ratio(std::pow(10.0, x), density, T_em, background, k));
  };

  const double f_lo = log_ratio(x_lo);
  const double f_hi = log_ratio(x_hi);
  if ((f_lo < 0.0) == (f_hi < 0.0))
    throw NumericalError("crossover_mass: no sign change in [" + sci(m_lo) + ", " + sci(m_hi) +
                         "] kg; ratio is " + sci(std::exp(f_lo)) + " and " +
                         sci(std::exp(f_hi)) + " at the end points");

  constexpr int scan_points = 200;
  const double direction = f_hi > f_lo ? 1.0 : -1.0;
  double prev = f_lo;
  for (int i = 1; i <= scan_points; ++i) {
    const double f = log_ratio(x_lo + (x_hi - x_lo) * i / scan_points);
    if (!(direction * (f - prev) > 0.0))
      throw NumericalError("crossover_mass: ratio is not monotone in the mass bracket");
    prev = f;
  }

  // |d log10 m| below log10(1 + 1e-8) is a relative mass tolerance of 1e-8.
  const double tol = std::log10(1.0 + 1e-8);
  auto close = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  const auto [a, b] = boost::math::tools::bisect(log_ratio, x_lo, x_hi, close);
  const double m_total = std::pow(10.0, 0.5 * (a + b));

  const TouchingSpheres pair = touching_spheres(m_total, density, k);
  return {m_total, pair.sphere_radius, pair.orbit.rho, pair.orbit.Omega,
          touching_spheres_ratio(m_total, density, T_em, background, k)};
}

}  // namespace gravidec
