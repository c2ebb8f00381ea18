#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ghz::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUnphysical = 2,
  kArgumentError = 3,
  kCheckFailed = 4,
};

/// Relative --output paths are resolved against this directory when set.
inline constexpr const char* kOutputDirEnv = "GHZSTEER_OUTPUT_DIR";

inline constexpr int kSchemaVersion = 1;

/// Runs one invocation; `args` excludes the program name. Results go to
/// `out` unless --output names a file, diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "start:stop:step" or a comma-separated list into eta values.
/// Throws std::invalid_argument on malformed input, step <= 0, or values
/// outside [0, 1].
std::vector<double> parse_grid(const std::string& spec);

/// printf("%.12g"), with -0 printed as 0.
std::string format_sig12(double v);

}  // namespace ghz::cli
