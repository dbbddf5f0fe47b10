#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace meanmotion::cli {

enum ExitCode : int { success = 0, verification_failure = 1, input_error = 2 };

struct RunConfig {
  std::string subcommand;  // eval | basis | zeros | track | mm | verify
  std::string polynomial_path;
  std::vector<double> x;
  std::vector<double> y;
  // Interval along the first coordinate for zeros/track.
  double a = -0.5;
  double b = 0.5;
  std::string convention = "both";
  std::vector<double> windows{25.0, 50.0, 100.0, 200.0};
  std::size_t lines = 2048;
  std::size_t run_length = 8;
  std::vector<double> aspect;  // per-axis edge factors, empty for cubes
  std::size_t torus_samples = 8192;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::string output_path;  // empty: stdout
  std::string format;       // json | csv; empty picks the subcommand default
  std::string trace_csv;

  /// Throws ArgumentError when a field required by the subcommand is missing.
  void validate() const;
};

/// "1,2.5,-3" → {1, 2.5, -3}. Throws ArgumentError.
std::vector<double> parse_list(const std::string& text);

/// Machine output goes to `out` (or the output file), diagnostics to `err`.
/// Input errors print {"error": {"kind", "message"}} on `out` and return 2.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace meanmotion::cli
