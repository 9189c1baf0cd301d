#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cavity/format.hpp"

namespace cavity::cli {

namespace {

struct CommandInfo {
  Command command;
  const char* name;
  const char* help;
};

constexpr CommandInfo kCommands[] = {
    {Command::spectrum, "spectrum", "converged spectrum at one coupling"},
    {Command::approx, "approx", "numeric and approximate levels at one coupling"},
    {Command::sweep, "sweep", "levels over a coupling grid"},
    {Command::compare_gauges, "compare-gauges", "dipole vs Coulomb Rabi spectra along a cutoff schedule"},
    {Command::scaling_check, "scaling-check", "compare N1 and N2 atom spectra under E -> E / (N2/N1)"},
    {Command::overlap_table, "overlap-table", "dump the overlap table S_kn(f)"},
    {Command::deep_strong, "deep-strong", "distance of the lowest levels from the integers"},
};

// Raw flag values before validation. Spin sector stays a string until N is known.
struct RawArgs {
  int n_atoms = 1;
  std::string j;
  double delta = 1.0;
  double coupling = 0.0;
  bool coupling_set = false;
  bool levels_set = false;
  std::string gauge = "coulomb";
  std::vector<std::string> methods;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

std::vector<ApproxMethod> default_methods(const ModelParams& params) {
  std::vector<ApproxMethod> out{ApproxMethod::diag0};
  if (params.sector.twice_j() == 1) out.push_back(ApproxMethod::pair0);
  out.push_back(ApproxMethod::multi0);
  out.push_back(ApproxMethod::pairwise_quad);
  out.push_back(ApproxMethod::second_order);
  return out;
}

std::string join_methods(const std::vector<ApproxMethod>& methods) {
  std::string s;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (i) s += ',';
    s += to_string(methods[i]);
  }
  return s;
}

void add_model_flags(CLI::App& app, RawArgs& raw) {
  app.add_option("--n-atoms", raw.n_atoms, "number of two-level atoms N");
  app.add_option("--j", raw.j, "spin sector J (default N/2), e.g. 1, 1.5 or 3/2");
  app.add_option("--delta", raw.delta, "transition frequency Delta");
}

void add_convergence_flags(CLI::App& app, RunConfig& cfg) {
  app.add_option("--tol", cfg.convergence.tol, "convergence tolerance on the watched levels");
  app.add_option("--n-max-start", cfg.convergence.n_max_start, "initial Fock cutoff");
  app.add_option("--n-max-cap", cfg.convergence.n_max_cap, "largest Fock cutoff tried");
  app.add_flag("--strict", cfg.strict, "exit 3 when the cutoff cap is hit before convergence");
}

void add_output_flags(CLI::App& app, RunConfig& cfg) {
  app.add_option("-o,--output", cfg.output, "CSV output path (default stdout)");
  app.add_flag("--dump-config", cfg.dump_config, "echo the resolved configuration");
}

void add_coupling(CLI::App& app, RawArgs& raw) {
  app.add_option("--coupling", raw.coupling, "dimensionless coupling f")
      ->each([&raw](const std::string&) { raw.coupling_set = true; });
}

void add_levels(CLI::App& app, RunConfig& cfg, RawArgs& raw, const char* help) {
  app.add_option("--levels", cfg.levels, help)->each([&raw](const std::string&) {
    raw.levels_set = true;
  });
}

void add_grid(CLI::App& app, RunConfig& cfg) {
  app.add_option("--f-min", cfg.f_min, "first coupling of the grid");
  app.add_option("--f-max", cfg.f_max, "last coupling of the grid");
  app.add_option("--points", cfg.points, "number of grid points");
}

void add_methods(CLI::App& app, RawArgs& raw) {
  app.add_option("--methods", raw.methods,
                 "comma list of diag0,pair0,multi0,pairwise_quad,second_order")
      ->delimiter(',');
}

void validate(RunConfig& cfg, const RawArgs& raw, bool uses_grid) {
  require(raw.n_atoms >= 1, "--n-atoms must be >= 1");
  require(std::isfinite(raw.delta) && raw.delta > 0.0, "--delta must be > 0");
  require(std::isfinite(raw.coupling) && raw.coupling >= 0.0, "--coupling must be >= 0");

  cfg.params.n_atoms = raw.n_atoms;
  cfg.params.delta = raw.delta;
  cfg.params.coupling = raw.coupling;
  if (raw.j.empty()) {
    cfg.params.sector = SpinSector::from_twice_j(raw.n_atoms);
  } else {
    try {
      cfg.params.sector = SpinSector::parse(raw.j);
    } catch (const std::exception& e) {
      throw UsageError("--j: " + std::string(e.what()));
    }
    require(sector_allowed(raw.n_atoms, cfg.params.sector),
            "--j " + raw.j + " is not a sector of " + std::to_string(raw.n_atoms) + " atoms");
  }

  if (raw.gauge == "coulomb") {
    cfg.gauge = Gauge::coulomb;
  } else if (raw.gauge == "dipole") {
    cfg.gauge = Gauge::dipole;
    require(raw.n_atoms == 1, "--gauge dipole is available for --n-atoms 1 only");
  } else {
    throw UsageError("--gauge must be coulomb or dipole");
  }

  if (uses_grid) {
    require(std::isfinite(cfg.f_min) && cfg.f_min >= 0.0, "--f-min must be >= 0");
    require(std::isfinite(cfg.f_max) && cfg.f_max >= cfg.f_min, "--f-max must be >= --f-min");
    require(cfg.points >= 1, "--points must be >= 1");
    require(cfg.points == 1 || cfg.f_max > cfg.f_min, "--points > 1 needs --f-max > --f-min");
  }

  for (const std::string& name : raw.methods) {
    try {
      cfg.methods.push_back(parse_approx_method(name));
    } catch (const std::exception&) {
      throw UsageError("--methods: unknown method '" + name + "'");
    }
  }
  if (cfg.params.sector.twice_j() != 1) {
    for (ApproxMethod m : cfg.methods) {
      require(m != ApproxMethod::pair0, "--methods: pair0 needs J = 1/2");
    }
  }

  require(cfg.levels >= 1, "--levels must be >= 1");
  require(cfg.convergence.tol > 0.0, "--tol must be > 0");
  require(cfg.convergence.n_max_start >= 1, "--n-max-start must be >= 1");
  require(cfg.convergence.n_max_cap >= cfg.convergence.n_max_start,
          "--n-max-cap must be >= --n-max-start");
  require(cfg.convergence.n_max_cap <= 4096, "--n-max-cap must be <= 4096");
  require(cfg.threads >= 1, "--threads must be >= 1");
  require(cfg.table_size >= 1 && cfg.table_size <= kDefaultMaxOrder,
          "--size must lie in [1, " + std::to_string(kDefaultMaxOrder) + "]");
  require(cfg.schedule_start >= 1, "--schedule-start must be >= 1");
  require(cfg.schedule_stop >= cfg.schedule_start, "--schedule-stop must be >= --schedule-start");
  require(cfg.schedule_stop <= 4096, "--schedule-stop must be <= 4096");
  require(cfg.n1 >= 1, "--n1 must be >= 1");
  require(cfg.n2 >= cfg.n1 && cfg.n2 % cfg.n1 == 0, "--n2 must be a multiple of --n1");
  require(cfg.n2 <= 64, "--n2 must be <= 64");

  if (cfg.command == Command::compare_gauges) {
    require(raw.n_atoms == 1, "compare-gauges needs --n-atoms 1");
  }
}

// ------------------------------------------------------------------- output

void write_level_header(std::ostream& csv, const RunConfig& cfg) {
  csv << csv_header(cfg) << '\n' << "f,sector_J,parity,level_index,method,energy\n";
}

void write_level(std::ostream& csv, double f, SpinSector sector, int parity, int index,
                 const std::string& method, double energy) {
  csv << format_real(f) << ',' << format_real(sector.j()) << ',' << parity << ',' << index << ','
      << method << ',' << format_real(energy) << '\n';
}

void write_spectrum_rows(std::ostream& csv, const Spectrum& s, double f, SpinSector sector,
                         int levels, const std::string& method) {
  for (int label : {1, -1}) {
    const std::vector<double> e = s.sector(label);
    for (std::size_t i = 0; i < e.size() && static_cast<int>(i) < levels; ++i) {
      write_level(csv, f, sector, label, static_cast<int>(i), method, e[i]);
    }
  }
}

void warn_envelope(std::ostream& err, int n_max, double f) {
  if (!within_validated_envelope(n_max, n_max, f)) {
    err << "warning: overlaps at n_max=" << n_max << ", f=" << format_real(f)
        << " lie outside the validated precision envelope (n <= " << kValidatedMaxIndex
        << ", f <= " << format_real(kValidatedMaxCoupling) << ")\n";
  }
}

int report_convergence(const Spectrum& s, double f, const RunConfig& cfg, std::ostream& err) {
  if (s.converged) return kExitOk;
  err << (cfg.strict ? "error" : "warning") << ": f=" << format_real(f)
      << " not converged at n_max_cap=" << cfg.convergence.n_max_cap
      << " (last shift " << format_real(s.max_shift) << " > tol " << format_real(cfg.convergence.tol)
      << ")\n";
  return cfg.strict ? kExitNotConverged : kExitOk;
}

ConvergenceOptions watched(const RunConfig& cfg) {
  ConvergenceOptions conv = cfg.convergence;
  conv.watch = std::max(conv.watch, cfg.levels);
  return conv;
}

int run_spectrum(const RunConfig& cfg, std::ostream& csv, std::ostream& summary,
                 std::ostream& err) {
  const Spectrum s = converged_spectrum(make_builder(cfg.params, cfg.gauge), watched(cfg));
  const double f = cfg.params.coupling;
  warn_envelope(err, s.n_max_used, f);
  const int code = report_convergence(s, f, cfg, err);

  write_level_header(csv, cfg);
  write_spectrum_rows(csv, s, f, cfg.params.sector, cfg.levels, "numeric");

  if (!cfg.dump_matrix.empty()) {
    std::ofstream dump(cfg.dump_matrix);
    if (!dump) {
      err << "error: cannot open " << cfg.dump_matrix << " for writing\n";
      return kExitIo;
    }
    write_matrix_csv(dump, build_hamiltonian(cfg.params, s.n_max_used, cfg.gauge));
    if (!dump) {
      err << "error: failed writing " << cfg.dump_matrix << '\n';
      return kExitIo;
    }
  }

  summary << "spectrum " << describe(cfg.params) << " gauge=" << to_string(cfg.gauge) << '\n'
          << "  n_max=" << s.n_max_used << " converged=" << (s.converged ? "yes" : "no")
          << " last_shift=" << format_real(s.max_shift) << '\n';
  for (int label : {1, -1}) {
    summary << "  parity " << (label > 0 ? "+1" : "-1") << ':';
    const std::vector<double> e = s.sector(label);
    for (std::size_t i = 0; i < e.size() && static_cast<int>(i) < cfg.levels; ++i) {
      summary << ' ' << format_real(e[i]);
    }
    summary << '\n';
  }
  return code;
}

int run_sweep(const RunConfig& cfg, const std::vector<double>& grid, std::ostream& csv,
              std::ostream& summary, std::ostream& err) {
  SweepOptions opts;
  opts.f_grid = grid;
  opts.methods = cfg.methods.empty() ? default_methods(cfg.params) : cfg.methods;
  opts.levels = cfg.levels;
  opts.convergence = cfg.convergence;
  opts.threads = cfg.threads;
  const SweepResult result = sweep(cfg.params, opts);

  int code = kExitOk;
  for (const SweepPoint& pt : result.points) {
    warn_envelope(err, pt.numeric.n_max_used, pt.f);
    code = std::max(code, report_convergence(pt.numeric, pt.f, cfg, err));
  }

  write_level_header(csv, cfg);
  for (const LevelRow& r : result.rows()) {
    write_level(csv, r.f, r.sector, r.parity, r.level_index, r.method, r.energy);
  }

  summary << (cfg.command == Command::approx ? "approx " : "sweep ") << describe(cfg.params)
          << " points=" << grid.size() << " levels/sector=" << cfg.levels << '\n'
          << "  all converged: " << (result.all_converged() ? "yes" : "no") << '\n';
  for (ApproxMethod m : opts.methods) {
    summary << "  max |approx - numeric| " << to_string(m) << ": "
            << format_real(result.max_error(m)) << '\n';
  }
  return code;
}

int run_compare_gauges(const RunConfig& cfg, std::ostream& csv, std::ostream& summary) {
  const std::vector<int> schedule = doubling_schedule(cfg.schedule_start, cfg.schedule_stop);
  const GaugeReport rep = gauge_equivalence(cfg.params, schedule, cfg.levels);

  write_level_header(csv, cfg);
  const double f = cfg.params.coupling;
  for (std::size_t i = 0; i < rep.dipole.size(); ++i) {
    write_level(csv, f, cfg.params.sector, rep.dipole_parity[i], static_cast<int>(i),
                "numeric_dipole", rep.dipole[i]);
  }
  for (std::size_t i = 0; i < rep.coulomb.size(); ++i) {
    write_level(csv, f, cfg.params.sector, rep.coulomb_parity[i], static_cast<int>(i),
                "numeric_coulomb", rep.coulomb[i]);
  }

  summary << "compare-gauges " << describe(cfg.params) << " levels=" << cfg.levels << '\n';
  for (std::size_t i = 0; i < rep.n_max.size(); ++i) {
    summary << "  n_max=" << rep.n_max[i] << " deviation=" << format_real(rep.deviation[i]) << '\n';
  }
  summary << "gauge deviation at n_max=" << rep.n_max.back() << ": "
          << format_real(rep.final_deviation) << (rep.monotone ? "" : " (not monotone)") << '\n';
  return kExitOk;
}

int run_scaling(const RunConfig& cfg, const std::vector<double>& grid, std::ostream& csv,
                std::ostream& summary) {
  const ScalingTable table =
      scaling_check(cfg.n1, cfg.n2, cfg.params.delta, grid, cfg.levels, watched(cfg), cfg.threads);

  csv << csv_header(cfg) << '\n'
      << "f,level_index,fock,M,energy_n1,scaled_energy_n2,abs_deviation,rel_deviation,matched,"
         "ambiguous\n";
  for (const ScalingRow& r : table.rows) {
    csv << format_real(r.f) << ',' << r.level_index << ',' << r.fock << ',' << format_real(r.m_proj)
        << ',' << format_real(r.energy_n1) << ',' << format_real(r.scaled_energy_n2) << ','
        << format_real(r.abs_deviation) << ',' << format_real(r.rel_deviation) << ','
        << (r.matched ? 1 : 0) << ',' << (r.ambiguous ? 1 : 0) << '\n';
  }

  summary << "scaling-check N1=" << cfg.n1 << " N2=" << cfg.n2
          << " delta=" << format_real(cfg.params.delta) << '\n';
  for (double f : grid) {
    summary << "  f=" << format_real(f)
            << " max |E(N1) - E(N2)/r|=" << format_real(table.max_abs_deviation(f)) << '\n';
  }
  return kExitOk;
}

int run_overlap_table(const RunConfig& cfg, std::ostream& csv, std::ostream& summary,
                      std::ostream& err) {
  const OverlapTable table(cfg.params.coupling, cfg.table_size);
  if (table.outside_validated_envelope()) warn_envelope(err, cfg.table_size, cfg.params.coupling);
  csv << csv_header(cfg) << '\n';
  write_overlap_csv(csv, table);
  summary << "overlap-table f=" << format_real(table.f()) << " size=" << table.size() << '\n';
  return kExitOk;
}

int run_deep_strong(const RunConfig& cfg, std::ostream& csv, std::ostream& summary,
                    std::ostream& err) {
  const AsymptoteReport rep = deep_strong_asymptote(cfg.params, cfg.levels, watched(cfg));
  const double f = cfg.params.coupling;

  write_level_header(csv, cfg);
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    write_level(csv, f, cfg.params.sector, rep.parity[i], static_cast<int>(i), "numeric",
                rep.levels[i]);
  }
  int code = kExitOk;
  if (!rep.converged) {
    err << (cfg.strict ? "error" : "warning") << ": f=" << format_real(f)
        << " not converged at n_max_cap=" << cfg.convergence.n_max_cap << '\n';
    if (cfg.strict) code = kExitNotConverged;
  }
  summary << "deep-strong " << describe(cfg.params) << " levels=" << rep.levels.size() << '\n'
          << "  max distance from integers: " << format_real(rep.max_distance) << '\n';
  return code;
}

int dispatch(const RunConfig& cfg, std::ostream& csv, std::ostream& summary, std::ostream& err) {
  switch (cfg.command) {
    case Command::spectrum:
      return run_spectrum(cfg, csv, summary, err);
    case Command::approx:
      return run_sweep(cfg, {cfg.params.coupling}, csv, summary, err);
    case Command::sweep:
      return run_sweep(cfg, linear_grid(cfg.f_min, cfg.f_max, cfg.points), csv, summary, err);
    case Command::compare_gauges:
      return run_compare_gauges(cfg, csv, summary);
    case Command::scaling_check:
      return run_scaling(cfg, linear_grid(cfg.f_min, cfg.f_max, cfg.points), csv, summary);
    case Command::overlap_table:
      return run_overlap_table(cfg, csv, summary, err);
    case Command::deep_strong:
      return run_deep_strong(cfg, csv, summary, err);
  }
  return kExitUsage;
}

}  // namespace

const char* to_string(Command command) {
  for (const CommandInfo& c : kCommands) {
    if (c.command == command) return c.name;
  }
  return "?";
}

RunConfig parse_args(int argc, const char* const* argv, std::string* early_exit) {
  RunConfig cfg;
  RawArgs raw;

  CLI::App app{"Energy spectra of the quantum Rabi and Dicke models in the Coulomb gauge",
               "cavity-spectra"};
  app.set_version_flag("--version", std::string("cavity-spectra ") + kVersion);
  app.require_subcommand(1);

  for (const CommandInfo& info : kCommands) {
    CLI::App* sub = app.add_subcommand(info.name, info.help);
    add_output_flags(*sub, cfg);
    sub->final_callback([&cfg, info] { cfg.command = info.command; });

    switch (info.command) {
      case Command::overlap_table:
        add_coupling(*sub, raw);
        sub->add_option("--size", cfg.table_size, "largest index k, n");
        continue;
      case Command::scaling_check:
        add_grid(*sub, cfg);
        add_convergence_flags(*sub, cfg);
        sub->add_option("--delta", raw.delta, "transition frequency Delta");
        sub->add_option("--n1", cfg.n1, "smaller atom number");
        sub->add_option("--n2", cfg.n2, "larger atom number, a multiple of --n1");
        add_levels(*sub, cfg, raw, "lowest N1 levels compared");
        sub->add_option("--threads", cfg.threads, "worker threads over grid points");
        continue;
      default:
        break;
    }

    add_model_flags(*sub, raw);
    add_levels(*sub, cfg, raw, "levels reported per parity sector");
    switch (info.command) {
      case Command::spectrum:
        add_coupling(*sub, raw);
        add_convergence_flags(*sub, cfg);
        sub->add_option("--gauge", raw.gauge, "coulomb or dipole (dipole needs N = 1)");
        sub->add_option("--dump-matrix", cfg.dump_matrix, "write the matrix as row,col,value CSV");
        break;
      case Command::approx:
        add_coupling(*sub, raw);
        add_convergence_flags(*sub, cfg);
        add_methods(*sub, raw);
        break;
      case Command::sweep:
        add_grid(*sub, cfg);
        add_convergence_flags(*sub, cfg);
        add_methods(*sub, raw);
        sub->add_option("--threads", cfg.threads, "worker threads over grid points");
        break;
      case Command::compare_gauges:
        add_coupling(*sub, raw);
        sub->add_option("--schedule-start", cfg.schedule_start, "first cutoff of the doubling schedule");
        sub->add_option("--schedule-stop", cfg.schedule_stop, "largest cutoff of the schedule");
        break;
      case Command::deep_strong:
        add_coupling(*sub, raw);
        add_convergence_flags(*sub, cfg);
        break;
      default:
        break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    if (early_exit) *early_exit = app.help();
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    if (early_exit) *early_exit = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::CallForVersion& e) {
    if (early_exit) *early_exit = e.what();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (cfg.command == Command::deep_strong && !raw.coupling_set) raw.coupling = 3.0;
  if (cfg.command == Command::deep_strong && !raw.levels_set) cfg.levels = 6;
  const bool uses_grid = cfg.command == Command::sweep || cfg.command == Command::scaling_check;
  validate(cfg, raw, uses_grid);
  return cfg;
}

std::string dump_config(const RunConfig& cfg) {
  std::ostringstream s;
  s << "command = " << to_string(cfg.command) << '\n'
    << "n_atoms = " << cfg.params.n_atoms << '\n'
    << "j = " << to_string(cfg.params.sector) << '\n'
    << "delta = " << format_real(cfg.params.delta) << '\n'
    << "coupling = " << format_real(cfg.params.coupling) << '\n'
    << "gauge = " << to_string(cfg.gauge) << '\n'
    << "f_min = " << format_real(cfg.f_min) << '\n'
    << "f_max = " << format_real(cfg.f_max) << '\n'
    << "points = " << cfg.points << '\n'
    << "methods = "
    << join_methods(cfg.methods.empty() ? default_methods(cfg.params) : cfg.methods) << '\n'
    << "levels = " << cfg.levels << '\n'
    << "tol = " << format_real(cfg.convergence.tol) << '\n'
    << "n_max_start = " << cfg.convergence.n_max_start << '\n'
    << "n_max_cap = " << cfg.convergence.n_max_cap << '\n'
    << "threads = " << cfg.threads << '\n'
    << "size = " << cfg.table_size << '\n'
    << "n1 = " << cfg.n1 << '\n'
    << "n2 = " << cfg.n2 << '\n'
    << "schedule = " << cfg.schedule_start << ".." << cfg.schedule_stop << '\n'
    << "strict = " << (cfg.strict ? "true" : "false") << '\n'
    << "output = " << (cfg.output.empty() ? "-" : cfg.output) << '\n'
    << "dump_matrix = " << (cfg.dump_matrix.empty() ? "-" : cfg.dump_matrix) << '\n';
  return s.str();
}

std::string csv_header(const RunConfig& cfg) {
  // Thread count and output paths are left out: they never change the data.
  std::ostringstream s;
  s << "# cavity-spectra v" << kVersion << " params: command=" << to_string(cfg.command);
  switch (cfg.command) {
    case Command::overlap_table:
      s << " f=" << format_real(cfg.params.coupling) << " size=" << cfg.table_size;
      return s.str();
    case Command::scaling_check:
      s << " n1=" << cfg.n1 << " n2=" << cfg.n2 << " delta=" << format_real(cfg.params.delta);
      break;
    default:
      s << " N=" << cfg.params.n_atoms << " J=" << to_string(cfg.params.sector)
        << " delta=" << format_real(cfg.params.delta);
      break;
  }
  switch (cfg.command) {
    case Command::sweep:
    case Command::scaling_check:
      s << " f_min=" << format_real(cfg.f_min) << " f_max=" << format_real(cfg.f_max)
        << " points=" << cfg.points;
      break;
    default:
      s << " f=" << format_real(cfg.params.coupling);
      break;
  }
  if (cfg.command == Command::sweep || cfg.command == Command::approx) {
    s << " methods="
      << join_methods(cfg.methods.empty() ? default_methods(cfg.params) : cfg.methods);
  }
  if (cfg.command == Command::spectrum) s << " gauge=" << to_string(cfg.gauge);
  s << " levels=" << cfg.levels;
  if (cfg.command == Command::compare_gauges) {
    s << " schedule=" << cfg.schedule_start << ".." << cfg.schedule_stop;
  } else {
    s << " tol=" << format_real(cfg.convergence.tol)
      << " n_max_start=" << cfg.convergence.n_max_start
      << " n_max_cap=" << cfg.convergence.n_max_cap;
  }
  return s.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::out | std::ios::trunc);
    if (!file) {
      err << "error: cannot open " << cfg.output << " for writing\n";
      return kExitIo;
    }
  }
  std::ostream& csv = cfg.output.empty() ? out : static_cast<std::ostream&>(file);
  std::ostream& summary = cfg.output.empty() ? err : out;
  if (cfg.dump_config) summary << dump_config(cfg);

  int code = kExitOk;
  try {
    code = dispatch(cfg, csv, summary, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  csv.flush();
  if (!csv) {
    err << "error: failed writing CSV output\n";
    return kExitIo;
  }
  return code;
}

}  // namespace cavity::cli
