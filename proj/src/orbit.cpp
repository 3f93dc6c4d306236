#include "gravidec/orbit.hpp"

#include <cmath>

#include "gravidec/error.hpp"

namespace gravidec {

TwoBodyOrbit orbit_from_masses_separation(double m_a, double m_b, double rho, double theta,
                                          const PhysicalConstants& k) {
  if (!(m_a > 0.0) || !(m_b > 0.0) || !(rho > 0.0) || !std::isfinite(m_a) ||
      !std::isfinite(m_b) || !std::isfinite(rho))
    throw InvalidArgument("orbit: masses and separation must be positive");
  TwoBodyOrbit o{};
  o.m_a = m_a;
  o.m_b = m_b;
  o.M = m_a + m_b;
  o.m = m_a * m_b / o.M;
  o.rho = rho;
  o.Omega = std::sqrt(k.G * o.M / (rho * rho * rho));
  o.theta = theta;
  o.a = rho * o.Omega * o.Omega;
  return o;
}

double kepler_separation(double M, double Omega, const PhysicalConstants& k) {
  if (!(M > 0.0) || !(Omega > 0.0))
    throw InvalidArgument("kepler_separation: mass and frequency must be positive");
  return std::cbrt(k.G * M / (Omega * Omega));
}

std::array<double, 2> position(const TwoBodyOrbit& orbit, double t) {
  const double phase = orbit.Omega * t + orbit.theta;
  return {orbit.rho * std::cos(phase), orbit.rho * std::sin(phase)};
}

QuadrupoleState quadrupole(const TwoBodyOrbit& orbit, double t) {
  const auto [x1, x2] = position(orbit, t);
  const std::array<double, 3> x{x1, x2, 0.0};
  const double r2 = x1 * x1 + x2 * x2;
  QuadrupoleState q{{}, t};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      q.Q[i][j] = orbit.m * (x[i] * x[j] - (i == j ? r2 / 3.0 : 0.0));
  return q;
}

double separation_distance(const TwoBodyOrbit& orbit, double delta_theta) {
  return orbit.rho * delta_theta;
}

}  // namespace gravidec
