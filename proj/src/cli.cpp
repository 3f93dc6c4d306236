#include "gravidec/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "gravidec/error.hpp"
#include "gravidec/format.hpp"
#include "gravidec/keyvalue.hpp"
#include "gravidec/noise.hpp"
#include "gravidec/random.hpp"
#include "gravidec/scenario.hpp"
#include "gravidec/simulation.hpp"

namespace gravidec::cli {

namespace {

const std::set<std::string>& setting_keys() {
  static const std::set<std::string> keys{
      "samples",          "dt",          "band_bins",           "ensemble",
      "delta_x",          "threads",     "dump_realization",    "d_tolerance",
      "dephasing_tolerance", "gaussian_sigma", "omega"};
  return keys;
}

bool is_known_key(const std::string& key) {
  return is_scenario_key(key) || setting_keys().count(key) > 0;
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw UsageError("--set expects key=value, got '" + text + "'");
  std::string key = text.substr(0, eq);
  key.erase(key.find_last_not_of(" \t") + 1);
  std::string value = text.substr(eq + 1);
  value.erase(0, value.find_first_not_of(" \t"));
  if (!is_known_key(key)) throw UsageError("unknown parameter '" + key + "'");
  return {key, value};
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "table") return OutputFormat::table;
  throw UsageError("--format must be csv, json or table, got '" + s + "'");
}

std::uint64_t parse_seed(const std::string& s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("--seed must be an unsigned 64-bit integer, got '" + s + "'");
  return v;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::rates: return "rates";
    case Command::simulate: return "simulate";
    case Command::sweep: return "sweep";
    case Command::spectrum: return "spectrum";
    case Command::catalog: return "catalog";
  }
  return "";
}

// ---------------------------------------------------------------------------
// Rendering

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') {
      out += '\\';
      out += ch;
    } else if (static_cast<unsigned char>(ch) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", ch);
      out += buf;
    } else {
      out += ch;
    }
  }
  return out + "\"";
}

std::string json_number(double x) { return std::isfinite(x) ? format_full(x) : "null"; }

struct Field {
  std::string name;
  double value;
  std::string unit;
};

std::vector<Field> report_fields(const DecoherenceReport& r) {
  std::vector<Field> f{
      {"m", r.m, "kg"},
      {"M", r.M, "kg"},
      {"rho", r.rho, "m"},
      {"Omega", r.Omega, "rad/s"},
      {"a", r.a, "m/s^2"},
      {"chh_at_2omega", r.chh_at_2omega, "1/Hz"},
      {"T_gr", r.grav.T_gr, "K"},
      {"n_gr", r.n_gr, "1"},
      {"Gamma_gr", r.grav.Gamma_gr, "1/s"},
      {"D_gr", r.grav.D_gr, "kg^2 m^2/s^3"},
      {"Lambda_gr", r.grav.Lambda_gr, "1/(s m^2)"},
      {"T_em", r.em.T_em, "K"},
      {"r", r.em.r, "m"},
      {"Gamma_em", r.em.Gamma_em, "1/s"},
      {"D_em", r.em.D_em, "kg^2 m^2/s^3"},
      {"Lambda_em", r.em.Lambda_em, "1/(s m^2)"},
      {"ratio_direct", r.ratio_direct, "1"},
      {"ratio_dimensionless", r.ratio_dimensionless, "1"},
  };
  for (const auto& t : r.times) f.push_back({"t_dec_gr_" + t.label, t.t_gr, "s"});
  for (const auto& t : r.times) f.push_back({"t_dec_em_" + t.label, t.t_em, "s"});
  return f;
}

void write_report_table(std::ostream& out, const DecoherenceReport& r) {
  out << "scenario: " << r.scenario << '\n';
  for (const auto& f : report_fields(r)) {
    std::string name = f.name;
    name.resize(std::max<std::size_t>(name.size(), 26), ' ');
    out << name << ' ' << format_short(f.value) << "  " << f.unit << '\n';
  }
  out << "note: damping by solar photons exceeds Gamma_gr by more than 1e10 and Earth-Moon "
         "tidal damping by more than 1e16 (literature values, not computed)\n";
}

void write_report_csv_header(std::ostream& out, const DecoherenceReport& r,
                             const std::string& leading = {}) {
  if (!leading.empty()) out << leading << ',';
  out << "scenario";
  for (const auto& f : report_fields(r)) out << ',' << f.name;
  out << '\n';
}

void write_report_csv_row(std::ostream& out, const DecoherenceReport& r,
                          std::optional<double> leading = std::nullopt) {
  if (leading) out << format_full(*leading) << ',';
  out << r.scenario;
  for (const auto& f : report_fields(r)) out << ',' << format_full(f.value);
  out << '\n';
}

void write_report_json(std::ostream& out, const DecoherenceReport& r, const std::string& indent,
                       const std::optional<std::pair<std::string, double>>& leading = {}) {
  out << "{\n";
  if (leading) out << indent << "  " << json_string(leading->first) << ": "
                   << json_number(leading->second) << ",\n";
  out << indent << "  \"scenario\": " << json_string(r.scenario);
  for (const auto& f : report_fields(r))
    out << ",\n" << indent << "  " << json_string(f.name) << ": " << json_number(f.value);
  out << '\n' << indent << '}';
}

// ---------------------------------------------------------------------------
// Commands

struct Context {
  const RunConfig& config;
  std::ostream& out;
  std::ostream& err;
  std::map<std::string, std::string> settings;
  ScenarioParams params;
};

Context make_context(const RunConfig& config, std::ostream& out, std::ostream& err,
                     bool need_scenario) {
  Context ctx{config, out, err, {}, {}};
  if (need_scenario) {
    const Catalog catalog = Catalog::from_environment();
    ctx.params = scenario_from_preset(catalog.get(config.scenario));
  }
  for (const auto& [key, value] : config.overrides) {
    if (!is_known_key(key)) throw UsageError("unknown parameter '" + key + "'");
    if (is_scenario_key(key)) {
      if (need_scenario) apply_override(ctx.params, key, value);
    } else {
      ctx.settings[key] = value;
    }
  }
  return ctx;
}

double setting(const Context& ctx, const std::string& key, double fallback) {
  auto it = ctx.settings.find(key);
  return it == ctx.settings.end() ? fallback : parse_double(it->second, key);
}

std::size_t count_setting(const Context& ctx, const std::string& key, std::size_t fallback) {
  const double v = setting(ctx, key, static_cast<double>(fallback));
  if (!(v >= 0.0) || v != std::floor(v)) throw UsageError(key + " must be a whole number");
  return static_cast<std::size_t>(v);
}

int cmd_rates(Context& ctx, std::ostream& out) {
  const DecoherenceReport rep = evaluate(resolve(ctx.params));
  switch (ctx.config.format.value_or(OutputFormat::table)) {
    case OutputFormat::table: write_report_table(out, rep); break;
    case OutputFormat::csv:
      write_report_csv_header(out, rep);
      write_report_csv_row(out, rep);
      break;
    case OutputFormat::json:
      write_report_json(out, rep, "");
      out << '\n';
      break;
  }
  return ok;
}

int cmd_sweep(Context& ctx, std::ostream& out) {
  if (!ctx.config.sweep) throw UsageError("sweep needs --sweep param:min:max:count:log|lin");
  const SweepAxis& axis = *ctx.config.sweep;
  const auto& numeric = numeric_scenario_keys();
  if (std::find(numeric.begin(), numeric.end(), axis.param) == numeric.end())
    throw UsageError("cannot sweep '" + axis.param + "'");

  std::vector<std::pair<double, DecoherenceReport>> rows;
  for (double v : axis.points()) {
    ScenarioParams p = ctx.params;
    apply_override(p, axis.param, v);
    rows.emplace_back(v, evaluate(resolve(p)));
  }

  switch (ctx.config.format.value_or(OutputFormat::csv)) {
    case OutputFormat::csv:
      write_report_csv_header(out, rows.front().second, axis.param);
      for (const auto& [v, rep] : rows) write_report_csv_row(out, rep, v);
      break;
    case OutputFormat::json:
      out << "{\n  \"axis\": " << json_string(axis.param) << ",\n  \"rows\": [";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        out << (i ? ",\n    " : "\n    ");
        write_report_json(out, rows[i].second, "    ",
                          std::make_pair(axis.param, rows[i].first));
      }
      out << "\n  ]\n}\n";
      break;
    case OutputFormat::table: {
      const auto fields = report_fields(rows.front().second);
      out << axis.param;
      for (const auto& f : fields) out << ' ' << f.name;
      out << '\n';
      for (const auto& [v, rep] : rows) {
        out << format_short(v);
        for (const auto& f : report_fields(rep)) out << ' ' << format_short(f.value);
        out << '\n';
      }
      break;
    }
  }
  return ok;
}

int cmd_spectrum(Context& ctx, std::ostream& out) {
  const ResolvedScenario sc = resolve(ctx.params);
  std::vector<double> omegas;
  if (ctx.config.sweep) {
    if (ctx.config.sweep->param != "omega")
      throw UsageError("spectrum sweeps only the 'omega' axis");
    omegas = ctx.config.sweep->points();
  } else if (auto it = ctx.settings.find("omega"); it != ctx.settings.end()) {
    std::stringstream list(it->second);
    for (std::string item; std::getline(list, item, ',');)
      omegas.push_back(parse_double(item, "omega"));
  } else {
    omegas.push_back(2.0 * sc.orbit.Omega);
  }
  std::sort(omegas.begin(), omegas.end());

  struct Row {
    double omega, chh, T_gr, n_gr;
  };
  std::vector<Row> rows;
  for (double w : omegas) {
    const double chh = sc.spectrum.evaluate(w);
    const auto th = thermodynamics(chh, w);
    rows.push_back({w, chh, th.T_gr, th.n_gr});
  }

  switch (ctx.config.format.value_or(OutputFormat::table)) {
    case OutputFormat::csv:
      out << "omega,chh,T_gr,n_gr\n";
      for (const auto& r : rows)
        out << format_full(r.omega) << ',' << format_full(r.chh) << ',' << format_full(r.T_gr)
            << ',' << format_full(r.n_gr) << '\n';
      break;
    case OutputFormat::json:
      out << "[";
      for (std::size_t i = 0; i < rows.size(); ++i)
        out << (i ? ",\n " : "\n ") << "{\"omega\": " << json_number(rows[i].omega)
            << ", \"chh\": " << json_number(rows[i].chh) << ", \"T_gr\": "
            << json_number(rows[i].T_gr) << ", \"n_gr\": " << json_number(rows[i].n_gr) << "}";
      out << "\n]\n";
      break;
    case OutputFormat::table:
      out << "omega [rad/s]   chh [1/Hz]      T_gr [K]        n_gr\n";
      for (const auto& r : rows)
        out << format_short(r.omega) << "     " << format_short(r.chh) << "     "
            << format_short(r.T_gr) << "     " << format_short(r.n_gr) << '\n';
      break;
  }
  return ok;
}

int cmd_catalog(Context& ctx, std::ostream& out) {
  const Catalog catalog = Catalog::from_environment();
  const auto format = ctx.config.format.value_or(OutputFormat::table);
  if (format == OutputFormat::json) {
    out << "[";
    bool first = true;
    for (const auto& p : catalog.presets()) {
      out << (first ? "\n " : ",\n ") << "{\"name\": " << json_string(p.name)
          << ", \"m_a\": " << json_number(p.m_a) << ", \"m_b\": " << json_number(p.m_b)
          << ", \"rho\": " << json_number(p.rho) << ", \"r\": " << json_number(p.r)
          << ", \"T_em\": " << json_number(p.T_em) << ", \"chh\": "
          << json_number(p.chh_at_2omega) << "}";
      first = false;
    }
    out << "\n]\n";
    return ok;
  }
  const bool csv = format == OutputFormat::csv;
  auto fmt = csv ? format_full : format_short;
  const char* sep = csv ? "," : "  ";
  out << (csv ? "name,m_a,m_b,rho,r,T_em,chh\n" : "name  m_a  m_b  rho  r  T_em  chh\n");
  for (const auto& p : catalog.presets())
    out << p.name << sep << fmt(p.m_a) << sep << fmt(p.m_b) << sep << fmt(p.rho) << sep
        << fmt(p.r) << sep << fmt(p.T_em) << sep << fmt(p.chh_at_2omega) << '\n';
  return ok;
}

int cmd_simulate(Context& ctx, std::ostream& out, bool summary_to_out) {
  const ResolvedScenario sc = resolve(ctx.params);
  SimOptions opts;
  opts.samples = count_setting(ctx, "samples", opts.samples);
  opts.dt_orbital = setting(ctx, "dt", opts.dt_orbital / sc.orbit.Omega) * sc.orbit.Omega;
  opts.band_bins = setting(ctx, "band_bins", opts.band_bins);
  opts.ensemble_size = count_setting(ctx, "ensemble", opts.ensemble_size);
  opts.delta_x = setting(ctx, "delta_x", 0.0);
  opts.threads = static_cast<unsigned>(count_setting(ctx, "threads", 0));
  const double d_tol = setting(ctx, "d_tolerance", 0.1);
  const double deph_tol = setting(ctx, "dephasing_tolerance", 0.05);
  const double gauss_sigma = setting(ctx, "gaussian_sigma", 3.0);

  const SimConfig config = make_sim_config(sc.orbit, sc.spectrum, ctx.config.seed, opts);
  const EnsembleStatistics st = run_ensemble(config);

  switch (ctx.config.format.value_or(OutputFormat::csv)) {
    case OutputFormat::csv: write_statistics_csv(out, st); break;
    case OutputFormat::json: {
      auto array = [&](const char* name, auto get) {
        out << "  " << json_string(name) << ": [";
        for (std::size_t c = 0; c < st.times.size(); ++c) out << (c ? ", " : "") << json_number(get(c));
        out << "]";
      };
      out << "{\n  \"D_fit\": " << json_number(st.D_fit) << ",\n  \"D_fit_stderr\": "
          << json_number(st.D_fit_stderr) << ",\n  \"D_analytic\": "
          << json_number(st.D_analytic) << ",\n  \"delta_x\": " << json_number(st.delta_x)
          << ",\n";
      array("t", [&](std::size_t c) { return st.times[c]; });
      out << ",\n";
      array("p_var", [&](std::size_t c) { return st.p_var[c]; });
      out << ",\n";
      array("p_var_stderr", [&](std::size_t c) { return st.p_var_stderr[c]; });
      out << ",\n";
      array("dephasing_re", [&](std::size_t c) { return st.dephasing[c].real(); });
      out << ",\n";
      array("dephasing_im", [&](std::size_t c) { return st.dephasing[c].imag(); });
      out << ",\n";
      array("dephasing_stderr", [&](std::size_t c) { return st.dephasing_stderr[c]; });
      out << ",\n";
      array("analytic_2Dt", [&](std::size_t c) { return st.analytic_2Dt[c]; });
      out << ",\n";
      array("analytic_dephasing", [&](std::size_t c) { return st.analytic_dephasing[c]; });
      out << "\n}\n";
      break;
    }
    case OutputFormat::table: throw UsageError("simulate writes csv or json");
  }

  if (auto it = ctx.settings.find("dump_realization"); it != ctx.settings.end()) {
    std::ofstream dump(it->second, std::ios::binary);
    if (!dump) throw UsageError("cannot write " + it->second);
    write_realization_csv(dump, synthesize(config.spectrum, config.grid,
                                           derive_seed(config.seed, 0), config.band));
  }

  const bool zero = st.D_analytic == 0.0;
  const double ratio = st.diffusion_ratio();
  const bool d_ok = zero ? st.D_fit == 0.0 : std::abs(ratio - 1.0) <= d_tol;
  const double deph = st.max_dephasing_deviation();
  const bool deph_ok = std::isnan(deph) || deph < deph_tol;
  const double gauss = st.max_gaussian_gap_sigma();
  const bool gauss_ok = gauss <= gauss_sigma;

  std::ostream& summary = summary_to_out ? ctx.out : ctx.err;
  summary << "D_fit/D_analytic = " << format_short(ratio) << " (+/- "
          << format_short(zero ? 0.0 : st.D_fit_stderr / st.D_analytic) << ", tolerance "
          << d_tol << ") " << (d_ok ? "ok" : "FAIL") << "; max dephasing deviation = "
          << format_short(deph) << " (tolerance " << deph_tol << ") "
          << (deph_ok ? "ok" : "FAIL") << "; gaussian identity max gap = "
          << format_short(gauss) << " sigma (limit " << gauss_sigma << ") "
          << (gauss_ok ? "ok" : "FAIL") << '\n';
  return d_ok && deph_ok && gauss_ok ? ok : threshold_failure;
}

}  // namespace

// ---------------------------------------------------------------------------

SweepAxis SweepAxis::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 5)
    throw UsageError("--sweep expects param:min:max:count:log|lin, got '" + std::string(text) + "'");
  SweepAxis axis;
  axis.param = parts[0];
  try {
    axis.min = parse_double(parts[1], "sweep min");
    axis.max = parse_double(parts[2], "sweep max");
    const double count = parse_double(parts[3], "sweep count");
    if (!(count >= 1.0) || count != std::floor(count)) throw UsageError("sweep count must be >= 1");
    axis.count = static_cast<std::size_t>(count);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (parts[4] == "log") axis.log = true;
  else if (parts[4] != "lin") throw UsageError("sweep spacing must be 'log' or 'lin'");
  if (axis.count > 1 && axis.min == axis.max)
    throw UsageError("degenerate sweep range: min = max with count > 1");
  if (axis.log && !(axis.min > 0.0 && axis.max > 0.0))
    throw UsageError("log sweep needs positive end points");
  return axis;
}

std::vector<double> SweepAxis::points() const {
  std::vector<double> pts;
  if (count == 1) return {min};
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(count - 1);
    if (i + 1 == count) pts.push_back(max);
    else if (log) pts.push_back(std::exp(std::log(min) + s * (std::log(max) - std::log(min))));
    else pts.push_back(min + s * (max - min));
  }
  return pts;
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Gravitational-wave decoherence of circular two-body orbits", "gravidec"};
  app.require_subcommand(1);

  std::string config_path, scenario, output, format, seed, sweep;
  std::vector<std::string> sets;
  const std::vector<std::pair<Command, std::string>> commands{
      {Command::rates, "Damping, diffusion and decoherence rates for one scenario"},
      {Command::simulate, "Monte Carlo check of diffusion and dephasing"},
      {Command::sweep, "Rates along one parameter axis"},
      {Command::spectrum, "Background temperature and graviton number"},
      {Command::catalog, "List scenario presets"},
  };
  std::map<std::string, CLI::Option*> opts;
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(command_name(cmd), help);
    sub->add_option("--config", config_path, "key = value run configuration");
    sub->add_option("--scenario", scenario, "preset name");
    sub->add_option("--set", sets, "parameter override key=value (repeatable)")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sub->add_option("--output", output, "output file (default stdout)");
    sub->add_option("--format", format, "csv | json | table");
    sub->add_option("--seed", seed, "random seed (u64)");
    sub->add_option("--sweep", sweep, "param:min:max:count:log|lin");
    subs.emplace_back(cmd, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig cfg;
  CLI::App* active = nullptr;
  for (const auto& [cmd, sub] : subs)
    if (sub->parsed()) {
      cfg.command = cmd;
      active = sub;
    }
  auto given = [&](const char* name) { return active->get_option(name)->count() > 0; };

  if (!config_path.empty()) {
    KeyValueFile file;
    try {
      file = load_key_value(config_path);
    } catch (const Error& e) {
      throw UsageError(config_path + ": " + e.what());
    }
    for (const std::string& section : {std::string(), std::string(command_name(cfg.command))}) {
      const auto* entries = file.find(section);
      if (!entries) continue;
      for (const auto& [key, value] : *entries) {
        if (key == "scenario") cfg.scenario = value;
        else if (key == "format") cfg.format = parse_format(value);
        else if (key == "output") cfg.output = value;
        else if (key == "seed") cfg.seed = parse_seed(value);
        else if (key == "sweep") cfg.sweep = SweepAxis::parse(value);
        else if (is_known_key(key)) cfg.overrides.emplace_back(key, value);
        else throw UsageError(config_path + ": unknown key '" + key + "'");
      }
    }
    for (const auto& section : file.section_order) {
      static const std::set<std::string> known{"", "rates", "simulate", "sweep", "spectrum",
                                               "catalog"};
      if (!known.count(section)) throw UsageError(config_path + ": unknown section [" + section + "]");
    }
  }

  if (given("--scenario")) cfg.scenario = scenario;
  if (given("--output")) cfg.output = output;
  if (given("--format")) cfg.format = parse_format(format);
  if (given("--seed")) cfg.seed = parse_seed(seed);
  if (given("--sweep")) cfg.sweep = SweepAxis::parse(sweep);
  for (const auto& s : sets) cfg.overrides.push_back(split_assignment(s));
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    if (config.output) {
      file.open(*config.output, std::ios::binary);
      if (!file) throw UsageError("cannot write " + *config.output);
    }
    std::ostream& dest = config.output ? static_cast<std::ostream&>(file) : out;
    Context ctx = make_context(config, out, err, config.command != Command::catalog);
    int code = ok;
    switch (config.command) {
      case Command::rates: code = cmd_rates(ctx, dest); break;
      case Command::sweep: code = cmd_sweep(ctx, dest); break;
      case Command::spectrum: code = cmd_spectrum(ctx, dest); break;
      case Command::catalog: code = cmd_catalog(ctx, dest); break;
      case Command::simulate: code = cmd_simulate(ctx, dest, config.output.has_value()); break;
    }
    dest.flush();
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return usage_error;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_command_line(argc, argv, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nrun with --help for usage\n";
    return usage_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  if (!config) return ok;
  return run(*config, out, err);
}

}  // namespace gravidec::cli
