#pragma once

#include <array>

#include "gravidec/quantities.hpp"

namespace gravidec {

/// Circular Kepler orbit of the relative coordinate of two bodies, in the
/// x1 x2 plane:  x = rho (cos(Omega t + theta), sin(Omega t + theta), 0).
struct TwoBodyOrbit {
  double m_a;    // kg
  double m_b;    // kg
  double m;      // reduced mass, kg
  double M;      // total mass, kg
  double rho;    // separation, m
  double Omega;  // rad/s
  double theta;  // rad
  double a;      // centripetal acceleration rho Omega^2, m/s^2
};

/// Traceless quadrupole m (x_i x_j - delta_ij |x|^2 / 3) at time t.
struct QuadrupoleState {
  std::array<std::array<double, 3>, 3> Q;  // kg m^2
  double t;                                // s
};

/// Builds the orbit from Kepler's law rho^3 Omega^2 = G M.
TwoBodyOrbit orbit_from_masses_separation(double m_a, double m_b, double rho,
                                          double theta = 0.0,
                                          const PhysicalConstants& k = codata2018);

/// Separation that gives orbital frequency Omega for total mass M.
double kepler_separation(double M, double Omega, const PhysicalConstants& k = codata2018);

std::array<double, 2> position(const TwoBodyOrbit& orbit, double t);

QuadrupoleState quadrupole(const TwoBodyOrbit& orbit, double t);

/// Arc distance rho * delta_theta between two motions on the same orbit.
double separation_distance(const TwoBodyOrbit& orbit, double delta_theta);

}  // namespace gravidec
