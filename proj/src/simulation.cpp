#include "gravidec/simulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "gravidec/error.hpp"
#include "gravidec/format.hpp"
#include "gravidec/random.hpp"
#include "gravidec/rates.hpp"

namespace gravidec {

namespace {

constexpr std::size_t checkpoint_count = 64;
constexpr std::size_t first_checkpoint = 8;
constexpr double min_correlation_times = 50.0;
constexpr double dephasing_target = 3.0;
constexpr double inv_sqrt2 = 0.70710678118654752440;

std::vector<std::size_t> checkpoint_indices(std::size_t n) {
  std::vector<std::size_t> idx;
  const double lo = std::log(static_cast<double>(first_checkpoint));
  const double hi = std::log(static_cast<double>(n - 1));
  for (std::size_t c = 0; c < checkpoint_count; ++c) {
    const double x = lo + (hi - lo) * static_cast<double>(c) / (checkpoint_count - 1);
    auto i = static_cast<std::size_t>(std::llround(std::exp(x)));
    if (!idx.empty()) i = std::max(i, idx.back() + 1);
    idx.push_back(std::min(i, n - 1));
  }
  // Only reachable for very short grids; keep the tail strictly increasing.
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

// F_j = prefactor Re[h''_j phasor_j].
void tidal_force(std::span<const std::complex<double>> h2,
                 std::span<const std::complex<double>> phasor, double prefactor,
                 std::span<double> out) {
  for (std::size_t j = 0; j < h2.size(); ++j) out[j] = prefactor * (h2[j] * phasor[j]).real();
}

void cumulative_trapezoid(std::span<const double> f, double dt, std::span<double> out) {
  if (f.empty()) return;
  out[0] = 0.0;
  for (std::size_t j = 1; j < f.size(); ++j) out[j] = out[j - 1] + 0.5 * dt * (f[j - 1] + f[j]);
}

std::vector<std::complex<double>> modulation(const SamplingGrid& grid, double Omega,
                                             double theta) {
  std::vector<std::complex<double>> phasor(grid.n);
  for (std::size_t j = 0; j < grid.n; ++j)
    phasor[j] = std::polar(1.0, 2.0 * (Omega * grid.time(j) + theta));
  return phasor;
}

double jackknife_stderr(std::span<const double> leave_one_out) {
  const auto n = static_cast<double>(leave_one_out.size());
  double mean = 0.0;
  for (double v : leave_one_out) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : leave_one_out) ss += (v - mean) * (v - mean);
  return std::sqrt((n - 1.0) / n * ss);
}

Band effective_band(const SimConfig& config) {
  const Band support = config.spectrum.support();
  const Band declared = config.band.value_or(Band{});
  return {std::max(support.lo, declared.lo), std::min(support.hi, declared.hi)};
}

}  // namespace

UnitScale UnitScale::for_orbit(const TwoBodyOrbit& orbit) {
  return {orbit.m, orbit.rho, 1.0 / orbit.Omega};
}

SimConfig make_sim_config(const TwoBodyOrbit& orbit, const GwSpectrum& spectrum,
                          std::uint64_t seed, const SimOptions& options,
                          const PhysicalConstants& k) {
  if (!(orbit.Omega > 0.0)) throw InvalidArgument("simulation: orbit needs Omega > 0");
  const SamplingGrid grid = SamplingGrid::make(options.samples, options.dt_orbital / orbit.Omega);
  const double half_width = options.band_bins * grid.resolution();
  const double center = 2.0 * orbit.Omega;
  SimConfig c{orbit, spectrum, grid, std::nullopt};
  c.band = Band{std::max(0.0, center - half_width), center + half_width};
  c.ensemble_size = options.ensemble_size;
  c.delta_x = options.delta_x;
  c.seed = seed;
  c.unit_scale = UnitScale::for_orbit(orbit);
  c.threads = options.threads;
  c.constants = k;
  return c;
}

double correlation_time(const SimConfig& config) {
  const Band b = effective_band(config);
  if (!(b.width() > 0.0)) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / b.width();
}

void validate(const SimConfig& config) {
  const TwoBodyOrbit& o = config.orbit;
  if (!(o.m > 0.0) || !(o.rho > 0.0) || !(o.Omega > 0.0))
    throw InvalidArgument("simulation: orbit needs positive m, rho and Omega");
  const double kepler_a = o.rho * o.Omega * o.Omega;
  if (o.a != 0.0 && std::abs(o.a - kepler_a) > 1e-9 * kepler_a)
    throw InvalidArgument("simulation: acceleration must be rho Omega^2 or exactly 0");
  SamplingGrid::make(config.grid.n, config.grid.dt);
  if (config.ensemble_size < 2) throw InvalidArgument("simulation: ensemble needs >= 2 members");
  if (!(config.grid.dt * 2.0 * o.Omega < std::numbers::pi / 2.0)) {
    std::ostringstream msg;
    msg << "simulation: grid does not resolve 2 Omega (dt 2 Omega = "
        << config.grid.dt * 2.0 * o.Omega << ", need < pi/2)";
    throw InvalidArgument(msg.str());
  }
  if (!config.spectrum.defined_at(2.0 * o.Omega))
    throw DomainError("simulation: spectrum not defined at 2 Omega");
  const double tau = correlation_time(config);
  const double ratio = config.grid.duration() / tau;
  if (!(ratio >= min_correlation_times)) {
    std::ostringstream msg;
    msg << "simulation: insufficient duration, " << ratio << " correlation times (need >= "
        << min_correlation_times << "); lengthen the grid or widen the band";
    throw InvalidArgument(msg.str());
  }
  if (!(config.delta_x >= 0.0)) throw InvalidArgument("simulation: delta_x must be >= 0");
}

std::vector<double> force_series(const TwoBodyOrbit& orbit, const NoiseRealization& h,
                                 const SamplingGrid& expected_grid) {
  if (!(h.grid == expected_grid) || h.samples.size() != expected_grid.n)
    throw InvalidArgument("force_series: realization grid does not match the configured grid");
  std::vector<double> force(expected_grid.n, 0.0);
  if (orbit.a == 0.0) return force;
  const NoiseRealization h2 = second_derivative(h);
  const auto phasor = modulation(expected_grid, orbit.Omega, orbit.theta);
  tidal_force(h2.samples, phasor, orbit.m * orbit.rho * inv_sqrt2, force);
  return force;
}

std::vector<double> integrate_momentum(std::span<const double> force, const SamplingGrid& grid) {
  std::vector<double> p(force.size());
  cumulative_trapezoid(force, grid.dt, p);
  return p;
}

double cff_zero_analytic(const TwoBodyOrbit& orbit, const GwSpectrum& spectrum) {
  const double chh = spectrum.evaluate(2.0 * orbit.Omega);
  return 4.0 * orbit.m * orbit.m * orbit.a * orbit.a * chh;
}

double EnsembleStatistics::diffusion_ratio() const {
  if (D_analytic == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return D_fit / D_analytic;
}

double EnsembleStatistics::max_dephasing_deviation(double lo, double hi) const {
  double worst = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t c = 0; c < times.size(); ++c) {
    const double predicted = analytic_dephasing[c];
    if (predicted < lo || predicted > hi) continue;
    const double dev = std::abs(std::abs(dephasing[c]) - predicted) / predicted;
    if (!(worst >= dev)) worst = dev;
  }
  return worst;
}

double EnsembleStatistics::max_gaussian_gap_sigma() const {
  double worst = 0.0;
  for (std::size_t c = 0; c < times.size(); ++c) {
    const double gap = std::abs(std::abs(dephasing[c]) - gaussian_dephasing[c]);
    if (gap == 0.0) continue;
    const double sigma = gaussian_gap_stderr[c];
    worst = std::max(worst, sigma > 0.0 ? gap / sigma : std::numeric_limits<double>::infinity());
  }
  return worst;
}

EnsembleStatistics run_ensemble(const SimConfig& config) {
  validate(config);
  const TwoBodyOrbit& orbit = config.orbit;
  const PhysicalConstants& k = config.constants;
  const UnitScale units = UnitScale::for_orbit(orbit);
  const std::size_t N = config.ensemble_size;

  // Everything below runs with m = rho = Omega = 1.
  const SamplingGrid grid{config.grid.n, config.grid.dt / units.time};
  std::optional<Band> band;
  if (config.band) band = Band{config.band->lo * units.time, config.band->hi * units.time};
  const NoiseSynthesizer synth(config.spectrum.in_time_unit(units.time), grid, band);
  const auto phasor = modulation(grid, 1.0, orbit.theta);
  const bool inertial = orbit.a == 0.0;
  const auto indices = checkpoint_indices(grid.n);
  const std::size_t C = indices.size();

  // Realizations are independent; results are stored by index and reduced
  // in index order, so output does not depend on the thread count.
  std::vector<double> p_at(N * C, 0.0);
  auto work = [&](std::size_t i, std::vector<double>& force, std::vector<double>& p) {
    if (inertial) return;
    const NoiseRealization h = synth.realize(derive_seed(config.seed, i));
    const NoiseRealization h2 = second_derivative(h);
    tidal_force(h2.samples, phasor, inv_sqrt2, force);
    cumulative_trapezoid(force, grid.dt, p);
    for (std::size_t c = 0; c < C; ++c) p_at[i * C + c] = p[indices[c]];
  };
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(N)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<double> force(grid.n), p(grid.n);
    for (std::size_t i; (i = next.fetch_add(1)) < N;) work(i, force, p);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  EnsembleStatistics st;
  st.ensemble_size = N;
  st.indices = indices;
  st.D_analytic = cff_zero_analytic(orbit, config.spectrum) / 2.0;
  st.Lambda_analytic = decoherence_rate(st.D_analytic, k);
  if (config.delta_x > 0.0) {
    st.delta_x = config.delta_x;
  } else if (st.D_analytic > 0.0) {
    st.delta_x = k.hbar * std::sqrt(dephasing_target / (st.D_analytic * config.grid.duration()));
  }
  // Phase per unit scaled momentum: dS / hbar = p dx / hbar.
  const double kappa = units.momentum() * st.delta_x / k.hbar;
  const double dx_over_hbar = st.delta_x / k.hbar;
  const double p2_unit = units.momentum() * units.momentum();

  const double n_real = static_cast<double>(N);
  std::vector<double> loo(N);
  std::vector<std::vector<double>> loo_pvar(C, std::vector<double>(N));
  for (std::size_t c = 0; c < C; ++c) {
    double sum_p2 = 0.0;
    std::complex<double> sum_z{};
    for (std::size_t i = 0; i < N; ++i) {
      const double p = p_at[i * C + c];
      sum_p2 += p * p;
      sum_z += std::polar(1.0, kappa * p);
    }
    const double t = config.grid.time(indices[c]);
    st.times.push_back(t);
    st.p_var.push_back(sum_p2 / n_real * p2_unit);
    st.dephasing.push_back(sum_z / n_real);
    st.gaussian_dephasing.push_back(std::exp(-0.5 * kappa * kappa * sum_p2 / n_real));
    st.analytic_2Dt.push_back(2.0 * st.D_analytic * t);
    st.analytic_dephasing.push_back(
        std::exp(-st.D_analytic * dx_over_hbar * dx_over_hbar * t));

    std::vector<double> loo_phase(N), loo_gap(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double p = p_at[i * C + c];
      const double pvar = (sum_p2 - p * p) / (n_real - 1.0);
      const double mag = std::abs((sum_z - std::polar(1.0, kappa * p)) / (n_real - 1.0));
      loo_pvar[c][i] = pvar;
      loo[i] = pvar * p2_unit;
      loo_phase[i] = mag;
      loo_gap[i] = mag - std::exp(-0.5 * kappa * kappa * pvar);
    }
    st.p_var_stderr.push_back(jackknife_stderr(loo));
    st.dephasing_stderr.push_back(jackknife_stderr(loo_phase));
    st.gaussian_gap_stderr.push_back(jackknife_stderr(loo_gap));
  }

  // Least-squares slope of <p^2> against t over the final half of the
  // checkpoints; D = slope / 2. The slope is linear in <p^2>, so each
  // leave-one-out slope reuses the same weights.
  st.fit_begin = C / 2;
  double t_mean = 0.0, y_mean = 0.0;
  const auto fit_n = static_cast<double>(C - st.fit_begin);
  for (std::size_t c = st.fit_begin; c < C; ++c) {
    t_mean += st.times[c];
    y_mean += st.p_var[c];
  }
  t_mean /= fit_n;
  y_mean /= fit_n;
  double stt = 0.0;
  for (std::size_t c = st.fit_begin; c < C; ++c) stt += (st.times[c] - t_mean) * (st.times[c] - t_mean);
  std::vector<double> weight(C, 0.0);
  double slope = 0.0;
  for (std::size_t c = st.fit_begin; c < C; ++c) {
    weight[c] = (st.times[c] - t_mean) / stt;
    slope += weight[c] * st.p_var[c];
  }
  st.D_fit = slope / 2.0;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t c = st.fit_begin; c < C; ++c) {
    const double fit = y_mean + slope * (st.times[c] - t_mean);
    ss_res += (st.p_var[c] - fit) * (st.p_var[c] - fit);
    ss_tot += (st.p_var[c] - y_mean) * (st.p_var[c] - y_mean);
  }
  st.fit_r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  for (std::size_t i = 0; i < N; ++i) {
    double s = 0.0;
    for (std::size_t c = st.fit_begin; c < C; ++c) s += weight[c] * loo_pvar[c][i] * p2_unit;
    loo[i] = s / 2.0;
  }
  st.D_fit_stderr = jackknife_stderr(loo);
  return st;
}

void write_statistics_csv(std::ostream& out, const EnsembleStatistics& st) {
  out << "t,p_var,p_var_stderr,dephasing_re,dephasing_im,dephasing_stderr,analytic_2Dt,"
         "analytic_dephasing\n";
  for (std::size_t c = 0; c < st.times.size(); ++c) {
    out << format_full(st.times[c]) << ',' << format_full(st.p_var[c]) << ','
        << format_full(st.p_var_stderr[c]) << ',' << format_full(st.dephasing[c].real()) << ','
        << format_full(st.dephasing[c].imag()) << ',' << format_full(st.dephasing_stderr[c])
        << ',' << format_full(st.analytic_2Dt[c]) << ',' << format_full(st.analytic_dephasing[c])
        << '\n';
  }
}

}  // namespace gravidec
