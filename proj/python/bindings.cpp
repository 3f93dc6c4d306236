#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "gravidec/cli.hpp"
#include "gravidec/error.hpp"
#include "gravidec/noise.hpp"
#include "gravidec/rates.hpp"
#include "gravidec/scenario.hpp"
#include "gravidec/simulation.hpp"

namespace py = pybind11;
using namespace gravidec;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  py::array_t<T> a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

py::dict report_dict(const DecoherenceReport& r) {
  py::dict d;
  d["scenario"] = r.scenario;
  d["m"] = r.m;
  d["M"] = r.M;
  d["rho"] = r.rho;
  d["Omega"] = r.Omega;
  d["a"] = r.a;
  d["chh_at_2omega"] = r.chh_at_2omega;
  d["n_gr"] = r.n_gr;
  d["T_gr"] = r.grav.T_gr;
  d["Gamma_gr"] = r.grav.Gamma_gr;
  d["D_gr"] = r.grav.D_gr;
  d["Lambda_gr"] = r.grav.Lambda_gr;
  d["Gamma_em"] = r.em.Gamma_em;
  d["D_em"] = r.em.D_em;
  d["Lambda_em"] = r.em.Lambda_em;
  d["ratio_direct"] = r.ratio_direct;
  d["ratio_dimensionless"] = r.ratio_dimensionless;
  py::dict times;
  for (const auto& t : r.times) times[py::str(t.label)] = py::make_tuple(t.t_gr, t.t_em);
  d["t_dec"] = times;
  return d;
}

py::dict rates_for(const std::string& scenario, const py::dict& overrides) {
  ScenarioParams p = scenario_from_preset(Catalog::from_environment().get(scenario));
  for (auto item : overrides) {
    const auto key = py::cast<std::string>(item.first);
    if (py::isinstance<py::str>(item.second))
      apply_override(p, key, py::cast<std::string>(item.second));
    else
      apply_override(p, key, py::cast<double>(item.second));
  }
  return report_dict(evaluate(resolve(p)));
}

py::array_t<std::complex<double>> synthesize_flat(double level, double omega_min,
                                                  double omega_max, std::size_t n, double dt,
                                                  std::uint64_t seed) {
  const auto real = synthesize(GwSpectrum::flat_band(level, omega_min, omega_max),
                               SamplingGrid::make(n, dt), seed);
  return to_array(real.samples);
}

py::tuple psd(py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast> x,
              double dt, std::size_t segments) {
  const auto est = estimate_psd(std::span<const std::complex<double>>(x.data(), x.size()),
                                SamplingGrid::make(static_cast<std::size_t>(x.size()), dt),
                                segments);
  return py::make_tuple(to_array(est.omega), to_array(est.psd));
}

py::dict simulate(const std::string& scenario, std::uint64_t seed, std::size_t ensemble,
                  std::size_t samples, unsigned threads) {
  const ResolvedScenario sc =
      resolve(scenario_from_preset(Catalog::from_environment().get(scenario)));
  SimOptions opts;
  opts.ensemble_size = ensemble;
  opts.samples = samples;
  opts.threads = threads;
  const SimConfig config = make_sim_config(sc.orbit, sc.spectrum, seed, opts);
  EnsembleStatistics stats;
  {
    py::gil_scoped_release release;
    stats = run_ensemble(config);
  }
  py::dict d;
  d["D_fit"] = stats.D_fit;
  d["D_fit_stderr"] = stats.D_fit_stderr;
  d["D_analytic"] = stats.D_analytic;
  d["delta_x"] = stats.delta_x;
  d["times"] = stats.times;
  d["p_var"] = stats.p_var;
  d["dephasing"] = stats.dephasing;
  d["analytic_dephasing"] = stats.analytic_dephasing;
  d["max_dephasing_deviation"] = stats.max_dephasing_deviation();
  d["max_gaussian_gap_sigma"] = stats.max_gaussian_gap_sigma();
  return d;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"gravidec"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gravitational-wave decoherence of circular two-body orbits";

  // Translators run most recently registered first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<LookupError>(m, "LookupError", PyExc_KeyError);
  py::register_exception<SubVacuumError>(m, "SubVacuumError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.attr("G") = codata2018.G;
  m.attr("c") = codata2018.c;
  m.attr("hbar") = codata2018.hbar;
  m.attr("k_B") = codata2018.k_B;

  m.def("planck_mass", [] { return planck_mass(); });
  m.def("planck_length", [] { return planck_length(); });
  m.def("compton_length", [](double mass) { return compton_length(mass); }, py::arg("m"));
  m.def("chh_to_temperature", [](double chh) { return chh_to_temperature(chh); });
  m.def("graviton_number", [](double chh, double omega) { return graviton_number(chh, omega); },
        py::arg("chh"), py::arg("omega"));
  m.def("grav_damping_rate", [](double mass, double a) { return grav_damping_rate(mass, a); },
        py::arg("m"), py::arg("a"));
  m.def("em_damping_rate",
        [](double mass, double r, double T) { return em_damping_rate(mass, r, T); },
        py::arg("m"), py::arg("r"), py::arg("T_em"));
  m.def("decoherence_time", &decoherence_time, py::arg("Lambda"), py::arg("delta_x"));
  m.def("presets", [] { return Catalog::from_environment().names(); });
  m.def("rates", &rates_for, py::arg("scenario") = "moon", py::arg("overrides") = py::dict(),
        "Full rate report for a preset with optional parameter overrides.");
  m.def(
      "crossover_mass",
      [](double density, double T_em, double chh) {
        const auto r = crossover_mass(density, T_em, GwSpectrum::flat(chh));
        return py::make_tuple(r.m_total, r.ratio);
      },
      py::arg("density") = 8000.0, py::arg("T_em") = 2.7, py::arg("chh") = 1e-34,
      "Total mass (kg) of a touching equal-sphere pair where both channels match.");
  m.def("synthesize_flat", &synthesize_flat, py::arg("level"), py::arg("omega_min"),
        py::arg("omega_max"), py::arg("n"), py::arg("dt"), py::arg("seed"));
  m.def("estimate_psd", &psd, py::arg("series"), py::arg("dt"), py::arg("segments"));
  m.def("simulate", &simulate, py::arg("scenario") = "moon", py::arg("seed") = 20011,
        py::arg("ensemble") = 1000, py::arg("samples") = 8192, py::arg("threads") = 0);
  m.def("run_cli", &run_cli, py::arg("args"),
        "Runs the command line tool in-process; returns (exit_code, stdout, stderr).");

#ifdef GRAVIDEC_VERSION
  m.attr("__version__") = GRAVIDEC_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
