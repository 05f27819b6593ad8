#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dposet {

enum class ExitCode : int { Pass = 0, VerificationFailure = 1, Obstruction = 2, Usage = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Defaults: spec "young", n_max 6, l chosen from r (2 when r = 1, else 1),
/// seed 0, table output, no cache unless --cache-dir is given.
struct RunConfig {
  std::string command;
  std::string spec = "young";
  int n_max = 6;
  std::optional<int> l;
  std::uint64_t seed = 0;
  std::string format = "table";  // table | json
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  std::string which = "DU";  // matrix: U | D | DU | UD
  int n = 2;                  // matrix, rcf
  bool timing = false;
  bool certificates = true;
  std::optional<std::string> output;

  bool operator==(const RunConfig&) const = default;
};

/// Throws UsageError on malformed arguments. args excludes the program name.
RunConfig parse_run_config(const std::vector<std::string>& args);
/// Arguments that parse back to the same config.
std::vector<std::string> to_args(const RunConfig& config);

int effective_l(const RunConfig& config, int r);

/// Runs one command and returns its exit code. Reports go to `out` (or the
/// --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace dposet
