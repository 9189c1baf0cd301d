#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavity/analysis.hpp"

namespace cavity::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitNotConverged = 3,
  kExitIo = 4,
};

enum class Command {
  spectrum,
  approx,
  sweep,
  compare_gauges,
  scaling_check,
  overlap_table,
  deep_strong,
};

const char* to_string(Command command);

/// Thrown by parse_args; the message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::spectrum;
  ModelParams params;
  Gauge gauge = Gauge::coulomb;

  double f_min = 0.0;
  double f_max = 1.0;
  int points = 11;

  std::vector<ApproxMethod> methods;  ///< empty: every method valid for the model
  int levels = 8;
  ConvergenceOptions convergence;
  int threads = 1;

  int table_size = 10;      // overlap-table
  int n1 = 10, n2 = 20;     // scaling-check
  int schedule_start = 16;  // compare-gauges
  int schedule_stop = 256;

  std::string output;  ///< empty: stdout
  std::string dump_matrix;
  bool strict = false;
  bool dump_config = false;
};

/// argv[0] is the program name. Throws UsageError on bad input. A bare
/// --help or --version request is reported through `early_exit` with the text
/// to print; the returned config is then meaningless.
RunConfig parse_args(int argc, const char* const* argv, std::string* early_exit = nullptr);

/// "key = value" lines of the resolved configuration.
std::string dump_config(const RunConfig& config);

/// The provenance comment that opens every CSV.
std::string csv_header(const RunConfig& config);

/// Executes the command. CSV goes to config.output (or `out` when empty);
/// the summary goes to `out` when writing a file, otherwise to `err`.
/// Returns one of the ExitCode values.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cavity::cli
