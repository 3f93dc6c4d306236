#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gravidec::cli {

/// Process exit codes.
enum ExitCode : int { ok = 0, usage_error = 2, threshold_failure = 3 };

enum class Command { rates, simulate, sweep, spectrum, catalog };
enum class OutputFormat { csv, json, table };

/// `param:min:max:count:log|lin`.
struct SweepAxis {
  std::string param;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
  bool log = false;

  static SweepAxis parse(std::string_view text);
  /// Points from min to max inclusive, in the order given.
  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::rates;
  std::string scenario = "moon";
  std::vector<std::pair<std::string, std::string>> overrides;  // --set, in order
  std::optional<std::string> output;
  std::optional<OutputFormat> format;
  std::uint64_t seed = 20011;
  std::optional<SweepAxis> sweep;
};

/// Thrown for malformed invocations and configurations (exit code 2).
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses argv (argv[0] is the program name). Returns nullopt after
/// printing help. A `--config <file>` key/value file supplies defaults that
/// flags override.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/// Runs one command and returns its exit code. Output goes to config.output
/// when set, else to `out`; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line + run with the exit-code contract applied.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gravidec::cli
