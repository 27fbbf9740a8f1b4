#ifndef BESOV_CLI_HPP
#define BESOV_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace besov {

/// Subcommands, in the order the help text lists them.
const std::vector<std::string>& cli_commands();

/// Command-line values that override the config file.
struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> resolution;
  std::optional<std::filesystem::path> out;
};

struct Report {
  std::string command;
  bool pass = true;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;   // extra lines under the table (spreads, tolerances)
  double runtime_seconds = 0.0;
  nlohmann::json config;            // resolved config echo

  std::string to_table() const;
  std::string to_csv() const;
};

/**
 * Validates `config` (unknown keys rejected, ConfigError names the path), runs the command
 * and writes report.txt, report.csv, config.json and any artifacts into the output directory
 * when one is set. `base` resolves relative paths in the config.
 */
Report run_experiment(const std::string& command, const nlohmann::json& config, const CliOverrides& overrides = {},
                      const std::filesystem::path& base = ".");

/// Full command line: 0 PASS, 1 FAIL or numerical error, 2 configuration error.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace besov

#endif  // BESOV_CLI_HPP
