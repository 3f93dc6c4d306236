#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "gravidec/noise.hpp"
#include "gravidec/orbit.hpp"
#include "gravidec/quantities.hpp"
#include "gravidec/spectrum.hpp"

namespace gravidec {

/// Units the simulator works in: the reduced mass, the separation and the
/// inverse orbital frequency. In these units m = rho = Omega = a = 1.
struct UnitScale {
  double mass;    // kg
  double length;  // m
  double time;    // s

  static UnitScale for_orbit(const TwoBodyOrbit& orbit);

  double momentum() const { return mass * length / time; }
  double diffusion() const { return momentum() * momentum() / time; }
};

struct SimConfig {
  TwoBodyOrbit orbit;
  GwSpectrum spectrum;
  SamplingGrid grid;                // physical time, s
  std::optional<Band> band;         // declared synthesis band, rad/s
  std::size_t ensemble_size = 1000;
  double delta_x = 0.0;             // m; 0 picks Lambda dx^2 duration = 3
  std::uint64_t seed = 0;
  UnitScale unit_scale{1.0, 1.0, 1.0};
  unsigned threads = 0;             // 0: hardware concurrency
  PhysicalConstants constants = codata2018;
};

struct SimOptions {
  std::size_t samples = 8192;
  double dt_orbital = 0.25;   // dt in units of 1/Omega
  double band_bins = 32.0;    // half-width of the band around 2 Omega, in DFT bins
  std::size_t ensemble_size = 1000;
  double delta_x = 0.0;
  unsigned threads = 0;
};

/// Grid, band around 2 Omega and unit scale for an orbit driven by `spectrum`.
SimConfig make_sim_config(const TwoBodyOrbit& orbit, const GwSpectrum& spectrum,
                          std::uint64_t seed, const SimOptions& options = {},
                          const PhysicalConstants& k = codata2018);

/// Throws InvalidArgument when the grid does not resolve 2 Omega, the run is
/// shorter than 50 correlation times of the synthesized band, or the
/// ensemble has fewer than two members.
void validate(const SimConfig& config);

/// Correlation time 2 pi / (width of the synthesized band).
double correlation_time(const SimConfig& config);

/// Tidal force along the mean motion,
///   F(t) = (m rho / sqrt 2) Re[h''(t) exp(2i(Omega t + theta))],
/// with h'' from second_derivative. Zero when orbit.a == 0.
std::vector<double> force_series(const TwoBodyOrbit& orbit, const NoiseRealization& h,
                                 const SamplingGrid& expected_grid);

/// Cumulative trapezoid, p_0 = 0.
std::vector<double> integrate_momentum(std::span<const double> force, const SamplingGrid& grid);

/// Zero-frequency force spectrum 4 m^2 a^2 C_hh[2 Omega], N^2 s.
double cff_zero_analytic(const TwoBodyOrbit& orbit, const GwSpectrum& spectrum);

struct EnsembleStatistics {
  std::vector<std::size_t> indices;  // checkpoint sample indices
  std::vector<double> times;         // s
  std::vector<double> p_var;         // <p_t^2>, kg^2 m^2 s^-2
  std::vector<double> p_var_stderr;
  std::vector<std::complex<double>> dephasing;  // <exp(i dS_t / hbar)>
  std::vector<double> dephasing_stderr;         // of |dephasing|
  std::vector<double> gaussian_dephasing;       // exp(-<dS_t^2> / 2 hbar^2)
  std::vector<double> gaussian_gap_stderr;      // of |dephasing| - gaussian_dephasing
  std::vector<double> analytic_2Dt;
  std::vector<double> analytic_dephasing;       // exp(-Lambda dx^2 t)

  double D_fit = 0.0;  // kg^2 m^2 s^-3
  double D_fit_stderr = 0.0;
  double D_analytic = 0.0;
  double fit_r_squared = 0.0;
  std::size_t fit_begin = 0;  // first checkpoint of the fit window
  double delta_x = 0.0;       // m
  double Lambda_analytic = 0.0;
  std::size_t ensemble_size = 0;

  /// D_fit / D_analytic (NaN when D_analytic = 0).
  double diffusion_ratio() const;
  /// Largest |(|dephasing| - analytic) / analytic| over checkpoints where
  /// the analytic factor lies in [lo, hi]; NaN when there are none.
  double max_dephasing_deviation(double lo = 0.1, double hi = 0.9) const;
  /// Largest | |dephasing| - gaussian | / stderr over all checkpoints.
  double max_gaussian_gap_sigma() const;
};

EnsembleStatistics run_ensemble(const SimConfig& config);

/// Columns t, p_var, p_var_stderr, dephasing_re, dephasing_im,
/// dephasing_stderr, analytic_2Dt, analytic_dephasing.
void write_statistics_csv(std::ostream& out, const EnsembleStatistics& stats);

}  // namespace gravidec
