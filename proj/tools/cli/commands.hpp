#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace confdist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `confdist <subcommand> [flags]`. `args` excludes the
/// program name. Reports go to `out`, diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lines of `key = value` (blank lines and `#` comments ignored) turned into
/// `--key value` pairs. Underscores in keys become dashes.
std::vector<std::string> read_config_args(const std::string& path);

/// "lo:hi:n" -> n evenly spaced points from lo to hi inclusive.
std::vector<double> parse_grid_spec(const std::string& spec);

}  // namespace confdist::cli
