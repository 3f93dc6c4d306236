#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "gravidec/spectrum.hpp"

namespace gravidec {

/// Uniform time grid t_j = j dt, j = 0 .. n-1, with n a power of two >= 16.
struct SamplingGrid {
  std::size_t n;
  double dt;  // s

  static SamplingGrid make(std::size_t n, double dt);

  double duration() const { return static_cast<double>(n) * dt; }
  double nyquist() const;
  /// Spacing 2 pi / duration of the DFT frequency grid.
  double resolution() const;
  /// Signed angular frequency of DFT bin k; the Nyquist bin is positive.
  double omega(std::size_t k) const;
  double time(std::size_t j) const { return static_cast<double>(j) * dt; }

  friend bool operator==(const SamplingGrid&, const SamplingGrid&) = default;
};

/// One sample path of the circular polarization h(t).
struct NoiseRealization {
  std::vector<std::complex<double>> samples;
  SamplingGrid grid;
  std::uint64_t seed = 0;
  std::optional<GwSpectrum> target;
};

/// Frequency-domain coloring of white Gaussian noise.
///
/// h = (h_A - i h_B) / sqrt(2) with h_A, h_B independent real stationary
/// Gaussian processes of two-sided PSD C(omega), so the PSD of h is C. With
/// omega_k = 2 pi k / (n dt), the real components are
///
///   h_A(t_j) = sum_k c_k exp(-i omega_k t_j),  c_{-k} = conj(c_k),
///   E|c_k|^2 = C(omega_k) / (n dt),
///
/// which gives Var h_A = sum_k C(omega_k) d(omega) / 2 pi. Only bins with |omega_k|
/// inside the spectrum's support intersected with the declared band carry
/// power. The random numbers drawn do not depend on the spectrum, so two
/// spectra synthesized with one seed share their underlying white noise.
class NoiseSynthesizer {
public:
  NoiseSynthesizer(const GwSpectrum& spectrum, const SamplingGrid& grid,
                   std::optional<Band> band = std::nullopt);

  NoiseRealization realize(std::uint64_t seed) const;

  const SamplingGrid& grid() const { return grid_; }
  /// Band actually synthesized (support intersected with the declared band).
  const Band& band() const { return band_; }
  /// sum_k C(omega_k) d(omega)/2pi over synthesized bins: variance of h_A,
  /// h_B and of |h|.
  double variance() const;

private:
  GwSpectrum spectrum_;
  SamplingGrid grid_;
  Band band_;
  std::vector<double> amplitude_;  // sqrt(C(omega_k) / (n dt)) per bin
};

NoiseRealization synthesize(const GwSpectrum& spectrum, const SamplingGrid& grid,
                            std::uint64_t seed, std::optional<Band> band = std::nullopt);

/// Spectral second time derivative: DFT coefficients multiplied by -omega_k^2.
NoiseRealization second_derivative(const NoiseRealization& realization);

struct PsdEstimate {
  std::vector<double> omega;  // ascending, rad/s
  std::vector<double> psd;    // two-sided, units of series^2 * s
  std::size_t segments = 0;

  /// Mean estimate over bins with |omega| inside the band.
  double band_average(const Band& band) const;
  /// sum psd d(omega) / 2 pi; equals the mean segment variance.
  double integral() const;
};

/// Averaged periodogram over `segment_count` non-overlapping, mean-removed,
/// rectangular segments. Uses the exp(+i omega t) kernel:
///   S(omega_k) = dt / L |sum_j x_j exp(i omega_k t_j)|^2.
PsdEstimate estimate_psd(std::span<const std::complex<double>> series, const SamplingGrid& grid,
                         std::size_t segment_count);
PsdEstimate estimate_psd(std::span<const double> series, const SamplingGrid& grid,
                         std::size_t segment_count);

/// CSV dump with columns t, re_h, im_h.
void write_realization_csv(std::ostream& out, const NoiseRealization& realization);

}  // namespace gravidec
