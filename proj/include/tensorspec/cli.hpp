#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tensorspec::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 1,
  kNotConverged = 2,
};

/// Everything one invocation produced. `report` is the document printed in
/// `--json` mode.
struct RunOutcome {
  int exit_code = kSuccess;
  nlohmann::json report;
};

/// Parses `args` (without the program name), runs one subcommand and writes
/// its output to `out` (human text, or one JSON document with --json) and
/// diagnostics to `err`.
RunOutcome run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace tensorspec::cli
