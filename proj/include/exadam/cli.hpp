#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace exadam {

// Exit codes: 0 success, 1 runtime failure, 2 usage error.

struct CliCommand {
  enum class Verb { run, compare, check, export_goldens };
  Verb verb = Verb::check;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides [run] seed
  std::string format = "csv";         // csv | json | md
};

/// Thrown for unknown verbs, missing configs and bad flags; the caller
/// prints usage plus the one-line cause and exits 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CliCommand parse_args(int argc, const char* const* argv);

/// Runs a parsed command; returns the process exit code. All files are
/// written atomically (temp file + rename).
int execute(const CliCommand& cmd);

/// parse_args + execute with the documented exit-code mapping.
int cli_main(int argc, const char* const* argv);

}  // namespace exadam
