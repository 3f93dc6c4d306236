// Acceptance suite: one PASS/FAIL line per criterion.
//
//   gravidec_acceptance                 run every criterion
//   gravidec_acceptance --criterion N   run criterion N only
//
// Exit status is 0 only if every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "gravidec/format.hpp"
#include "gravidec/noise.hpp"
#include "gravidec/rates.hpp"
#include "gravidec/simulation.hpp"

using namespace gravidec;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20011;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string title;
  std::function<Outcome()> check;
};

std::string sci(double x) { return format_short(x); }

bool within(double x, double lo, double hi) { return x >= lo && x <= hi; }

std::string range(double x, double lo, double hi, const std::string& unit = "") {
  std::ostringstream s;
  s << sci(x) << unit << " in [" << sci(lo) << ", " << sci(hi) << "]";
  return s.str();
}

struct Moon {
  TwoBodyOrbit orbit = orbit_from_masses_separation(5.972e24, 7.346e22, 3.844e8);
  GwSpectrum background = GwSpectrum::flat(1e-34);
  DecoherenceReport report = decoherence_report("moon", orbit, 1.737e6, 2.7, background);
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Ensemble shared by the diffusion and dephasing criteria.
const EnsembleStatistics& moon_ensemble(double* runtime = nullptr, double* corr_times = nullptr) {
  static double elapsed = 0.0, n_corr = 0.0;
  static const EnsembleStatistics stats = [] {
    const Moon moon;
    SimOptions opts;
    opts.ensemble_size = 1000;
    const SimConfig cfg = make_sim_config(moon.orbit, moon.background, kSeed, opts);
    n_corr = cfg.grid.duration() / correlation_time(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    auto st = run_ensemble(cfg);
    elapsed = seconds_since(t0);
    return st;
  }();
  if (runtime) *runtime = elapsed;
  if (corr_times) *corr_times = n_corr;
  return stats;
}

Outcome temperature() {
  const double T = chh_to_temperature(1e-34);
  return {within(T, 5e40, 2e41), "T_gr = " + range(T, 5e40, 2e41, " K")};
}

Outcome graviton_number_moon() {
  const Moon moon;
  const double n = graviton_number(1e-34, 2.0 * moon.orbit.Omega);
  return {within(n, 1e57, 4e57), "n_gr = " + range(n, 1e57, 4e57)};
}

Outcome grav_damping() {
  const double g = Moon().report.grav.Gamma_gr;
  return {within(g, 5e-35, 2e-34), "Gamma_gr = " + range(g, 5e-35, 2e-34, " 1/s")};
}

Outcome em_damping() {
  const auto r = Moon().report;
  const double g = r.em.Gamma_em, q = g / r.grav.Gamma_gr;
  return {within(g, 1e-32, 4e-32) && within(q, 100.0, 400.0),
          "Gamma_em = " + range(g, 1e-32, 4e-32, " 1/s") + "; Gamma_em/Gamma_gr = " +
              range(q, 100.0, 400.0)};
}

Outcome grav_decoherence() {
  const double L = Moon().report.grav.Lambda_gr;
  return {within(L, 2e74, 2e75), "Lambda_gr = " + range(L, 2e74, 2e75, " 1/(s m^2)")};
}

Outcome planck_time() {
  const double t = decoherence_time(Moon().report.grav.Lambda_gr, planck_length()) * 1e6;
  return {within(t, 1.0, 30.0), "t_dec(l_P) = " + range(t, 1.0, 30.0, " us")};
}

Outcome channel_ratio() {
  const auto r = Moon().report;
  const double q = r.grav.Lambda_gr / r.em.Lambda_em;
  return {within(q, 1e37, 1e39), "Lambda_gr/Lambda_em = " + range(q, 1e37, 1e39)};
}

Outcome crossover() {
  const auto res = crossover_mass(8000.0, 2.7, GwSpectrum::flat(1e-34));
  std::ostringstream s;
  s << "M_total = " << range(res.m_total, 1e2, 1e4, " kg") << " (ratio at root "
    << sci(res.ratio) << ", Omega " << sci(res.Omega) << " rad/s)";
  return {within(res.m_total, 1e2, 1e4), s.str()};
}

Outcome identities() {
  auto previous = set_warning_handler([](const std::string&) {});
  std::mt19937_64 gen(kSeed);
  auto log_uniform = [&](double lo, double hi) {
    return std::pow(10.0,
                    std::uniform_real_distribution<>(std::log10(lo), std::log10(hi))(gen));
  };
  const int n = 10000;
  double worst_einstein = 0.0, worst_ratio = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < n; ++i) {
    const auto orbit = orbit_from_masses_separation(log_uniform(1e-3, 1e31),
                                                    log_uniform(1e-3, 1e31),
                                                    log_uniform(1e-3, 1e13));
    const double T_em = log_uniform(0.1, 1e4);
    const auto rep = decoherence_report("p", orbit, log_uniform(1e-6, 1e7), T_em,
                                        GwSpectrum::flat(log_uniform(1e-40, 1e-28)));
    const auto& g = rep.grav;
    const double einstein_gr = orbit.m * g.Gamma_gr * codata2018.k_B * g.T_gr / g.D_gr - 1.0;
    const double einstein_em =
        orbit.m * rep.em.Gamma_em * codata2018.k_B * T_em / rep.em.D_em - 1.0;
    worst_einstein = std::max({worst_einstein, std::abs(einstein_gr), std::abs(einstein_em)});
    worst_ratio =
        std::max(worst_ratio, std::abs(rep.ratio_direct / rep.ratio_dimensionless - 1.0));
  }
  const double elapsed = seconds_since(t0);
  set_warning_handler(previous);
  std::ostringstream s;
  s << n << " scenarios, max rel. error Einstein " << sci(worst_einstein) << ", ratio forms "
    << sci(worst_ratio) << " (limit 1e-10), " << sci(elapsed) << " s (limit 5 s)";
  return {worst_einstein <= 1e-10 && worst_ratio <= 1e-10 && elapsed < 5.0, s.str()};
}

Outcome mc_diffusion() {
  double runtime = 0.0, n_corr = 0.0;
  const auto& st = moon_ensemble(&runtime, &n_corr);
  const double q = st.diffusion_ratio();
  std::ostringstream s;
  s << "N = " << st.ensemble_size << ", " << sci(n_corr) << " correlation times, D_fit/D = "
    << range(q, 0.9, 1.1) << " (jackknife +/- " << sci(st.D_fit_stderr / st.D_analytic)
    << "), ensemble " << sci(runtime) << " s";
  return {within(q, 0.9, 1.1) && n_corr >= 50.0, s.str()};
}

Outcome mc_dephasing() {
  const auto& st = moon_ensemble();
  const double dev = st.max_dephasing_deviation(0.1, 0.9);
  const double gap = st.max_gaussian_gap_sigma();
  std::size_t in_window = 0;
  for (double p : st.analytic_dephasing) in_window += p >= 0.1 && p <= 0.9;
  std::ostringstream s;
  s << "max |(|<e^{i dS}>| - e^{-Lambda dx^2 t})| / e^{-Lambda dx^2 t} = " << sci(dev)
    << " over " << in_window << " checkpoints (limit 0.05); Gaussian identity max gap "
    << sci(gap) << " sigma (limit 3)";
  return {in_window > 0 && dev <= 0.05 && gap <= 3.0, s.str()};
}

double excess_kurtosis(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m += v;
  m /= static_cast<double>(x.size());
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = (v - m) * (v - m);
    m2 += d;
    m4 += d * d;
  }
  m2 /= static_cast<double>(x.size());
  m4 /= static_cast<double>(x.size());
  return m4 / (m2 * m2) - 3.0;
}

Outcome noise_fidelity() {
  const double level = 1e-34;
  const auto grid = SamplingGrid::make(std::size_t{1} << 20, 1.0);
  const auto spectrum = GwSpectrum::flat_band(level, 0.05, 3.0);
  const auto h = synthesize(spectrum, grid, kSeed);
  const auto est = estimate_psd(h.samples, grid, 200);
  const double avg = est.band_average(Band{0.1, 2.9}) / level;
  std::vector<double> pooled;
  pooled.reserve(2 * grid.n);
  for (const auto& z : h.samples) pooled.push_back(z.real());
  for (const auto& z : h.samples) pooled.push_back(z.imag());
  const double kurt = excess_kurtosis(pooled);
  std::ostringstream s;
  s << "band-average PSD / target = " << range(avg, 0.95, 1.05) << " (200 segments); excess "
    << "kurtosis = " << range(kurt, -0.1, 0.1) << " over " << pooled.size() << " samples";
  return {within(avg, 0.95, 1.05) && within(kurt, -0.1, 0.1) && pooled.size() >= 1000000,
          s.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / ("gravidec_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"rates_table", "rates --scenario moon"},
      {"rates_csv", "rates --scenario moon --format csv"},
      {"rates_json", "rates --scenario moon --format json"},
      {"sweep", "sweep --scenario metal_pair --set geometry=touching --sweep m_total:1:1e6:25:log"},
      {"spectrum", "spectrum --sweep omega:1e-7:1e-3:9:log --format csv"},
      {"catalog", "catalog --format json"},
      {"simulate", "simulate --seed 7 --set ensemble=200 --set dump_realization=" +
                       (dir / "simulate_h_RUN.csv").string()},
  };
  bool all_same = true;
  std::string differing;
  for (const auto& [name, args] : commands) {
    std::string first;
    for (int run = 0; run < 2; ++run) {
      std::string cmd_args = args;
      const std::string tag = "RUN";
      if (auto pos = cmd_args.find(tag); pos != std::string::npos)
        cmd_args.replace(pos, tag.size(), std::to_string(run));
      const fs::path out = dir / (name + "_" + std::to_string(run));
      const std::string cmd = std::string("\"") + GRAVIDEC_CLI + "\" " + cmd_args +
                              " --output \"" + out.string() + "\" > /dev/null 2>&1";
      const int rc = std::system(cmd.c_str());
      (void)rc;
      std::string bytes = slurp(out);
      if (name == "simulate") bytes += slurp(dir / ("simulate_h_" + std::to_string(run) + ".csv"));
      if (bytes.empty()) {
        all_same = false;
        differing += " " + name + "(empty)";
      }
      if (run == 0) first = std::move(bytes);
      else if (bytes != first) {
        all_same = false;
        differing += " " + name;
      }
    }
  }
  fs::remove_all(dir);
  return {all_same, std::to_string(commands.size()) +
                        " commands run twice, outputs byte-identical" +
                        (all_same ? "" : "; differing:" + differing)};
}

const std::map<int, Criterion>& criteria() {
  static const std::map<int, Criterion> c{
      {1, {"effective temperature", temperature}},
      {2, {"graviton number", graviton_number_moon}},
      {3, {"gravitational damping", grav_damping}},
      {4, {"electromagnetic damping", em_damping}},
      {5, {"gravitational decoherence rate", grav_decoherence}},
      {6, {"Planck-length decoherence time", planck_time}},
      {7, {"channel ratio", channel_ratio}},
      {8, {"crossover mass", crossover}},
      {9, {"algebraic identities", identities}},
      {10, {"Monte Carlo diffusion", mc_diffusion}},
      {11, {"Monte Carlo dephasing", mc_dephasing}},
      {12, {"noise fidelity", noise_fidelity}},
      {13, {"determinism", determinism}},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]...\n";
      return 2;
    }
  }
  if (selected.empty())
    for (const auto& [id, _] : criteria()) selected.push_back(id);

  int failures = 0;
  for (int id : selected) {
    const auto it = criteria().find(id);
    if (it == criteria().end()) {
      std::cerr << "no criterion " << id << '\n';
      return 2;
    }
    Outcome o{false, ""};
    try {
      o = it->second.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %2d  %-32s %s\n", o.pass ? "PASS" : "FAIL", id, it->second.title.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
