#pragma once

// The hilb2 command line as a library so tests can drive it in-process.

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "suites.hpp"

namespace hilb2::cli {

enum class Command { Count, Constant, Inspect, Verify, LeCount };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Count;
  double s = 2, t = 1;
  std::vector<double> B;
  double ratio = 2;
  long M_max = 200;
  Format format = Format::Csv;
  bool emit_points = false;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
  std::vector<long> ell;
  std::vector<long> q;
  std::string suite;
  /// Suite sizes; the defaults are the full acceptance sizes.
  suites::SuiteOptions suite_options;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInternal = 2;

/// Executes a validated configuration; the report goes to `out` (or the
/// --out file), diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hilb2::cli
