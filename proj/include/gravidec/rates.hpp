#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gravidec/orbit.hpp"
#include "gravidec/quantities.hpp"
#include "gravidec/spectrum.hpp"

namespace gravidec {

/// Gravitational-wave channel. D = m Gamma k_B T and Lambda = D / hbar^2.
struct GravChannel {
  double Gamma_gr;   // s^-1
  double D_gr;       // kg^2 m^2 s^-3
  double Lambda_gr;  // s^-1 m^-2
  double T_gr;       // K
};

/// Thermal photon channel for a perfectly scattering sphere of radius r.
struct EmChannel {
  double Gamma_em;
  double D_em;
  double Lambda_em;
  double T_em;
  double r;
};

/// 32 G m a^2 / (5 c^5): damping by gravitational-wave emission.
double grav_damping_rate(double m, double a, const PhysicalConstants& k = codata2018);

/// Momentum diffusion 2 m^2 a^2 C_hh[2 Omega], i.e. half the zero-frequency
/// force spectrum.
double grav_diffusion(double m, double a, double chh_at_2omega,
                      const PhysicalConstants& k = codata2018);

/// hbar c / (k_B T).
double thermal_wavelength(double T, const PhysicalConstants& k = codata2018);

/// Radiation-pressure damping 4 pi^3 hbar r^2 / (45 m) (k_B T / hbar c)^4.
/// Emits a warning through the warning handler when r is less than ten
/// thermal wavelengths, where the geometric-optics form no longer holds.
double em_damping_rate(double m, double r, double T_em, const PhysicalConstants& k = codata2018);

/// D / hbar^2.
double decoherence_rate(double D, const PhysicalConstants& k = codata2018);

/// Time at which Lambda dx^2 t = 1.
double decoherence_time(double Lambda, double delta_x);

GravChannel grav_channel(double m, double a, double chh_at_2omega,
                         const PhysicalConstants& k = codata2018);
EmChannel em_channel(double m, double r, double T_em, const PhysicalConstants& k = codata2018);

/// Lambda_gr / Lambda_em as (Gamma_gr / Gamma_em)(T_gr / T_em).
double ratio_direct(const GravChannel& grav, const EmChannel& em);

/// The same ratio as the product
/// (72/pi^3)(m/m_P)^2 (rho/r)^2 (hbar Omega / k_B T_em)^4 (T_gr / T_em).
double ratio_dimensionless(double m, double rho, double r, double Omega, double T_em,
                           double T_gr, const PhysicalConstants& k = codata2018);

/// Receives warning-level diagnostics. The default handler writes to stderr.
using WarningHandler = std::function<void(const std::string&)>;
/// Installs `handler` and returns the previous one.
WarningHandler set_warning_handler(WarningHandler handler);

struct DecoherenceTime {
  std::string label;
  double delta_x;  // m
  double t_gr;     // s, +inf when Lambda_gr = 0
  double t_em;     // s
};

struct DecoherenceReport {
  std::string scenario;
  double m;      // reduced mass, kg
  double M;      // total mass, kg
  double rho;    // m
  double Omega;  // rad/s
  double a;      // m/s^2
  double chh_at_2omega;
  double n_gr;
  GravChannel grav;
  EmChannel em;
  double ratio_direct;
  double ratio_dimensionless;
  std::vector<DecoherenceTime> times;

  /// Gravitational decoherence time at separation dx.
  double t_dec_at(double delta_x) const;
};

/// Separations reported by default: Planck length, 1 fm and 1 Angstrom.
std::vector<std::pair<std::string, double>> standard_separations(
    const PhysicalConstants& k = codata2018);

/// Full evaluation of one scenario. `acceleration` overrides rho Omega^2
/// (a = 0 gives the inertial null for the gravitational channel).
DecoherenceReport decoherence_report(const std::string& scenario, const TwoBodyOrbit& orbit,
                                     double orbiter_radius, double T_em,
                                     const GwSpectrum& background,
                                     std::optional<double> acceleration = std::nullopt,
                                     const PhysicalConstants& k = codata2018);

/// Two equal spheres of the given density touching each other (rho = 2r).
struct TouchingSpheres {
  double m_total;
  double sphere_radius;
  TwoBodyOrbit orbit;
};

TouchingSpheres touching_spheres(double m_total, double density,
                                 const PhysicalConstants& k = codata2018);

/// Dimensionless-form ratio for a touching pair, with T_gr taken from the
/// background at the pair's 2 Omega.
double touching_spheres_ratio(double m_total, double density, double T_em,
                              const GwSpectrum& background,
                              const PhysicalConstants& k = codata2018);

struct CrossoverResult {
  double m_total;  // kg
  double sphere_radius;
  double rho;
  double Omega;
  double ratio;  // ratio at the returned mass
};

/// Total mass of a touching pair for which gravitational and photon
/// decoherence rates are equal. Bisection on log10(m) inside
/// [m_lo, m_hi] after checking the ratio is monotone there.
CrossoverResult crossover_mass(double density, double T_em, const GwSpectrum& background,
                               const PhysicalConstants& k = codata2018, double m_lo = 1e-3,
                               double m_hi = 1e9);

}  // namespace gravidec
