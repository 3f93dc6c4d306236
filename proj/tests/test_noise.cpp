#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gravidec/error.hpp"
#include "gravidec/noise.hpp"

using namespace gravidec;

namespace {

constexpr double pi = std::numbers::pi;

double mean_abs2(const std::vector<std::complex<double>>& x) {
  double s = 0.0;
  for (const auto& z : x) s += std::norm(z);
  return s / static_cast<double>(x.size());
}

}  // namespace

TEST(SamplingGrid, Construction) {
  EXPECT_THROW(SamplingGrid::make(8, 1.0), InvalidArgument);
  EXPECT_THROW(SamplingGrid::make(100, 1.0), InvalidArgument);
  EXPECT_THROW(SamplingGrid::make(64, 0.0), InvalidArgument);
  const auto g = SamplingGrid::make(64, 0.5);
  EXPECT_DOUBLE_EQ(g.duration(), 32.0);
  EXPECT_DOUBLE_EQ(g.nyquist(), 2.0 * pi);
  EXPECT_DOUBLE_EQ(g.resolution(), 2.0 * pi / 32.0);
  EXPECT_DOUBLE_EQ(g.omega(1), g.resolution());
  EXPECT_DOUBLE_EQ(g.omega(63), -g.resolution());
  EXPECT_DOUBLE_EQ(g.omega(32), g.nyquist());
}

TEST(Synthesis, Reproducible) {
  const auto s = GwSpectrum::flat_band(1.0, 0.5, 1.5);
  const auto g = SamplingGrid::make(1024, 0.5);
  const auto a = synthesize(s, g, 11), b = synthesize(s, g, 11), c = synthesize(s, g, 12);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_NE(a.samples, c.samples);
  EXPECT_EQ(a.seed, 11u);
  ASSERT_TRUE(a.target.has_value());
}

TEST(Synthesis, SharedWhiteNoiseAcrossSpectra) {
  const auto g = SamplingGrid::make(512, 1.0);
  const auto a = synthesize(GwSpectrum::flat_band(1.0, 0.1, 1.0), g, 5);
  const auto b = synthesize(GwSpectrum::flat_band(4.0, 0.1, 1.0), g, 5);
  for (std::size_t j = 0; j < g.n; ++j) EXPECT_NEAR(std::abs(b.samples[j] - 2.0 * a.samples[j]), 0.0, 1e-12);
}

TEST(Synthesis, VarianceMatchesSpectrum) {
  const double level = 2.5;
  const Band band{0.2, 1.2};
  const auto g = SamplingGrid::make(1 << 16, 0.5);
  const NoiseSynthesizer synth(GwSpectrum::flat_band(level, band.lo, band.hi), g);
  // Two-sided flat band: variance = level * 2 (hi - lo) / 2 pi.
  EXPECT_NEAR(synth.variance() / (level * 2.0 * band.width() / (2.0 * pi)), 1.0, 2e-3);
  const auto h = synth.realize(77);
  EXPECT_NEAR(mean_abs2(h.samples) / synth.variance(), 1.0, 0.05);
  double re = 0.0, im = 0.0;
  for (const auto& z : h.samples) re += z.real() * z.real(), im += z.imag() * z.imag();
  EXPECT_NEAR(re / im, 1.0, 0.1);
}

TEST(Synthesis, PsdMatchesTarget) {
  const auto g = SamplingGrid::make(1 << 17, 0.25);
  const auto s = GwSpectrum::flat_band(3.0, 0.5, 4.0);
  const auto h = synthesize(s, g, 1);
  const auto est = estimate_psd(h.samples, g, 64);
  EXPECT_NEAR(est.band_average(Band{0.7, 3.8}) / 3.0, 1.0, 0.03);
  EXPECT_LT(est.band_average(Band{5.0, 10.0}), 0.01);
  EXPECT_NEAR(est.integral() / mean_abs2(h.samples), 1.0, 0.02);
}

TEST(Synthesis, BandErrors) {
  const auto g = SamplingGrid::make(256, 1.0);
  EXPECT_THROW(synthesize(GwSpectrum::flat(1.0), g, 1), InvalidArgument);
  EXPECT_NO_THROW(synthesize(GwSpectrum::flat(1.0), g, 1, Band{0.5, 1.0}));
  try {
    synthesize(GwSpectrum::flat_band(1.0, 1.0, 5.0), g, 1);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("deficit"), std::string::npos);
  }
  EXPECT_THROW(synthesize(GwSpectrum::flat_band(1.0, 1.0, 1.001), g, 1), DomainError);
  EXPECT_THROW(synthesize(GwSpectrum::flat_band(1.0, 1.0, 2.0), g, 1, Band{2.5, 3.0}),
               InvalidArgument);
}

TEST(SecondDerivative, PureTone) {
  const auto g = SamplingGrid::make(256, 0.1);
  const double w = 7.0 * g.resolution();
  NoiseRealization tone{std::vector<std::complex<double>>(g.n), g, 0, std::nullopt};
  for (std::size_t j = 0; j < g.n; ++j) tone.samples[j] = std::polar(1.0, -w * g.time(j));
  const auto d2 = second_derivative(tone);
  for (std::size_t j = 0; j < g.n; ++j)
    EXPECT_NEAR(std::abs(d2.samples[j] + w * w * tone.samples[j]), 0.0, 1e-10);
}

TEST(Periodogram, ToneLandsOnItsFrequency) {
  const auto g = SamplingGrid::make(1024, 0.5);
  const double w = 20.0 * g.resolution() * 4.0;  // bin 20 of a 256-sample segment
  std::vector<std::complex<double>> x(g.n);
  for (std::size_t j = 0; j < g.n; ++j) x[j] = std::polar(2.0, -w * g.time(j));
  const auto est = estimate_psd(x, g, 4);
  ASSERT_EQ(est.omega.size(), 256u);
  EXPECT_TRUE(std::is_sorted(est.omega.begin(), est.omega.end()));
  const auto peak = std::max_element(est.psd.begin(), est.psd.end()) - est.psd.begin();
  EXPECT_NEAR(est.omega[peak], w, 1e-12);
  EXPECT_NEAR(est.integral(), 4.0, 1e-10);
}

TEST(Periodogram, RealSeriesIsSymmetric) {
  const auto g = SamplingGrid::make(512, 1.0);
  std::vector<double> x(g.n);
  for (std::size_t j = 0; j < g.n; ++j) x[j] = std::cos(0.3 * j) + 0.1 * std::sin(1.1 * j);
  const auto est = estimate_psd(std::span<const double>(x), g, 2);
  const std::size_t zero = est.omega.size() / 2 - 1;
  ASSERT_EQ(est.omega[zero], 0.0);
  for (std::size_t i = 1; i <= zero; ++i) {
    EXPECT_DOUBLE_EQ(est.omega[zero - i], -est.omega[zero + i]);
    EXPECT_NEAR(est.psd[zero - i], est.psd[zero + i], 1e-9);
  }
  EXPECT_THROW(estimate_psd(std::span<const double>(x), g, 0), InvalidArgument);
  EXPECT_THROW(estimate_psd(std::span<const double>(x), g, 400), InvalidArgument);
}

TEST(Realization, CsvDump) {
  const auto g = SamplingGrid::make(16, 2.0);
  const auto h = synthesize(GwSpectrum::flat_band(1.0, 0.2, 1.0), g, 3);
  std::ostringstream out;
  write_realization_csv(out, h);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,re_h,im_h");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 16);
  EXPECT_EQ(out.str().find('\r'), std::string::npos);
}
