#include "gravidec/noise.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gravidec/detail/fft.hpp"
#include "gravidec/error.hpp"
#include "gravidec/format.hpp"
#include "gravidec/random.hpp"

namespace gravidec {

using detail::dft;
using detail::FftSign;

SamplingGrid SamplingGrid::make(std::size_t n, double dt) {
  if (n < 16 || !std::has_single_bit(n))
    throw InvalidArgument("sampling grid: n must be a power of two >= 16, got " +
                          std::to_string(n));
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw InvalidArgument("sampling grid: dt must be positive");
  return {n, dt};
}

double SamplingGrid::nyquist() const { return std::numbers::pi / dt; }

double SamplingGrid::resolution() const { return 2.0 * std::numbers::pi / duration(); }

double SamplingGrid::omega(std::size_t k) const {
  const auto signed_k = k <= n / 2 ? static_cast<double>(k)
                                   : static_cast<double>(k) - static_cast<double>(n);
  return signed_k * resolution();
}

NoiseSynthesizer::NoiseSynthesizer(const GwSpectrum& spectrum, const SamplingGrid& grid,
                                   std::optional<Band> band)
    : spectrum_(spectrum), grid_(SamplingGrid::make(grid.n, grid.dt)) {
  const Band support = spectrum.support();
  const Band declared = band.value_or(Band{});
  band_ = {std::max(support.lo, declared.lo), std::min(support.hi, declared.hi)};
  if (!std::isfinite(band_.hi))
    throw InvalidArgument("synthesize: spectrum has unbounded support; declare a band");
  if (band_.lo > band_.hi) throw InvalidArgument("synthesize: declared band misses the spectrum");
  if (band_.hi > grid_.nyquist()) {
    std::ostringstream msg;
    msg << "synthesize: grid too coarse, band reaches " << band_.hi
        << " rad/s but Nyquist is " << grid_.nyquist() << " rad/s (deficit "
        << band_.hi - grid_.nyquist() << " rad/s)";
    throw DomainError(msg.str());
  }

  amplitude_.assign(grid_.n, 0.0);
  std::size_t bins = 0;
  for (std::size_t k = 0; k < grid_.n; ++k) {
    const double w = grid_.omega(k);
    if (!band_.contains(std::abs(w)) || !spectrum_.defined_at(w)) continue;
    amplitude_[k] = std::sqrt(spectrum_.evaluate(w) / grid_.duration());
    ++bins;
  }
  if (bins == 0)
    throw DomainError("synthesize: band narrower than the frequency resolution " +
                      format_short(grid_.resolution()) + " rad/s");
}

double NoiseSynthesizer::variance() const {
  double sum = 0.0;
  for (double a : amplitude_) sum += a * a;
  return sum;
}

NoiseRealization NoiseSynthesizer::realize(std::uint64_t seed) const {
  const std::size_t n = grid_.n;
  const std::size_t half = n / 2;
  std::vector<std::complex<double>> a(n), b(n);
  CounterRng rng(seed);
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  for (std::size_t k = 0; k <= half; ++k) {
    if (k == 0 || k == half) {
      a[k] = amplitude_[k] * rng.normal();
      b[k] = amplitude_[k] * rng.normal();
      continue;
    }
    const double ar = rng.normal(), ai = rng.normal();
    const double br = rng.normal(), bi = rng.normal();
    const double s = amplitude_[k] * inv_sqrt2;
    a[k] = {s * ar, s * ai};
    b[k] = {s * br, s * bi};
    a[n - k] = std::conj(a[k]);
    b[n - k] = std::conj(b[k]);
  }

  NoiseRealization out{std::vector<std::complex<double>>(n), grid_, seed, spectrum_};
  const std::complex<double> minus_i{0.0, -1.0};
  for (std::size_t k = 0; k < n; ++k) out.samples[k] = (a[k] + minus_i * b[k]) * inv_sqrt2;
  dft(out.samples, FftSign::minus);
  return out;
}

NoiseRealization synthesize(const GwSpectrum& spectrum, const SamplingGrid& grid,
                            std::uint64_t seed, std::optional<Band> band) {
  return NoiseSynthesizer(spectrum, grid, band).realize(seed);
}

NoiseRealization second_derivative(const NoiseRealization& realization) {
  const SamplingGrid& grid = realization.grid;
  if (realization.samples.size() != grid.n)
    throw InvalidArgument("second_derivative: sample count does not match grid");
  NoiseRealization out{realization.samples, grid, realization.seed, std::nullopt};
  dft(out.samples, FftSign::minus);
  const double inv_n = 1.0 / static_cast<double>(grid.n);
  for (std::size_t k = 0; k < grid.n; ++k) {
    const double w = grid.omega(k);
    out.samples[k] *= -w * w * inv_n;
  }
  dft(out.samples, FftSign::plus);
  return out;
}

double PsdEstimate::band_average(const Band& band) const {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!band.contains(std::abs(omega[i]))) continue;
    sum += psd[i];
    ++count;
  }
  if (count == 0) throw DomainError("band_average: no estimate bins inside the band");
  return sum / static_cast<double>(count);
}

double PsdEstimate::integral() const {
  if (omega.size() < 2) return 0.0;
  const double dw = omega[1] - omega[0];
  double sum = 0.0;
  for (double s : psd) sum += s;
  return sum * dw / (2.0 * std::numbers::pi);
}

PsdEstimate estimate_psd(std::span<const std::complex<double>> series, const SamplingGrid& grid,
                         std::size_t segment_count) {
  if (segment_count == 0) throw InvalidArgument("estimate_psd: need at least one segment");
  const std::size_t length = series.size() / segment_count;
  if (length < 2)
    throw InvalidArgument("estimate_psd: " + std::to_string(segment_count) +
                          " segments do not fit in " + std::to_string(series.size()) +
                          " samples");
  const double dt = grid.dt;
  std::vector<double> power(length, 0.0);
  std::vector<std::complex<double>> buf(length);
  for (std::size_t s = 0; s < segment_count; ++s) {
    const auto segment = series.subspan(s * length, length);
    std::complex<double> mean{};
    for (const auto& x : segment) mean += x;
    mean /= static_cast<double>(length);
    for (std::size_t j = 0; j < length; ++j) buf[j] = segment[j] - mean;
    dft(buf, FftSign::plus);
    for (std::size_t k = 0; k < length; ++k) power[k] += std::norm(buf[k]);
  }

  PsdEstimate est;
  est.segments = segment_count;
  const double scale = dt / static_cast<double>(length) / static_cast<double>(segment_count);
  const double dw = 2.0 * std::numbers::pi / (static_cast<double>(length) * dt);
  const std::size_t first_negative = length / 2 + 1;
  auto push = [&](std::size_t k, double signed_k) {
    est.omega.push_back(signed_k * dw);
    est.psd.push_back(power[k] * scale);
  };
  for (std::size_t k = first_negative; k < length; ++k)
    push(k, static_cast<double>(k) - static_cast<double>(length));
  for (std::size_t k = 0; k < first_negative; ++k) push(k, static_cast<double>(k));
  return est;
}

PsdEstimate estimate_psd(std::span<const double> series, const SamplingGrid& grid,
                         std::size_t segment_count) {
  std::vector<std::complex<double>> z(series.begin(), series.end());
  return estimate_psd(std::span<const std::complex<double>>(z), grid, segment_count);
}

void write_realization_csv(std::ostream& out, const NoiseRealization& realization) {
  out << "t,re_h,im_h\n";
  for (std::size_t j = 0; j < realization.samples.size(); ++j) {
    out << format_full(realization.grid.time(j)) << ',' << format_full(realization.samples[j].real())
        << ',' << format_full(realization.samples[j].imag()) << '\n';
  }
}

}  // namespace gravidec
