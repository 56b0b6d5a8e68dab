#pragma once

// Command implementations behind the chsh executable. Each returns a process
// exit status and reports on the given streams.

#include <cstdint>
#include <exception>
#include <ostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chsh/errors.hpp"
#include "chsh/quasiprob.hpp"

namespace chsh {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string angles;  // empty: not given
  std::string grid;    // empty: not given
  std::string kind = "chsh";
  std::string pattern;  // empty: command default
  std::string mode = "conditional";  // conditional | unconditional | both
  std::string sampling = "integer";  // integer | continuous
  std::size_t samples = 100;
  std::size_t draws = 1000;
  std::uint64_t seed = 1;
  std::string out;  // empty: stdout
  unsigned threads = 1;
};

using Setting = std::pair<std::string, std::string>;

/// Applies one key=value setting; keys are the long flag names without
/// dashes. Throws InvalidInput on unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Reads "key = value" lines; '#' starts a comment, blank lines are skipped.
std::vector<Setting> read_config_file(const std::string& path);

/// Defaults, then the file settings, then the flag settings.
RunConfig resolve_config(const std::vector<Setting>& file_settings, const std::vector<Setting>& flag_settings);

int cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_scan(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);

/// Golden self-checks; `sigma` is the coefficient matrix under test.
int cmd_verify(std::ostream& out, const CoefficientMatrix& sigma = build_sigma());

/// Runs `fn`, mapping InvalidInput to kExitUsage and other failures to
/// kExitFailure with a message on `err`.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace chsh
