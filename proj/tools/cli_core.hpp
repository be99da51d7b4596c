#ifndef GGSUM_CLI_CORE_HPP
#define GGSUM_CLI_CORE_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ggsum::cli {

/// A fully parsed run: the command path (e.g. "rf ber") and its parameters
/// as canonical text values.  Values come from flags merged over an optional
/// config file (one `key = value` per line, lists comma-separated; flags
/// win).  Unknown keys are hard errors at dispatch time.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> params;

  bool operator==(const RunConfig&) const = default;
};

/// Parses a `key = value` config file body.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Reads back a RunConfig from the `# config:` lines of an emitted report.
RunConfig parse_config_echo(const std::string& report);

/// Serializes a double with 17 significant digits (value round-trips).
std::string fmt17(double v);

/// One accepted option of a command.
struct OptionSpec {
  const char* key;
  const char* help;
  bool is_flag = false;
};

/// Accepted keys per command, in CLI declaration order.
const std::vector<std::pair<std::string, std::vector<OptionSpec>>>&
command_schemas();

/// Executes a run, writing the report to `out` and diagnostics to `err`.
/// Returns the process exit code: 0 success, 2 config/validation error,
/// 3 numerical error.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv parsing + run_command).
int cli_main(int argc, const char* const* argv);

}  // namespace ggsum::cli

#endif
