#pragma once

// Verification suites shared by `hilb2 verify` and the acceptance binary.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hilb2::suites {

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  /// Deterministic key/value lines (no timings).
  std::vector<std::pair<std::string, std::string>> metrics;
  bool passed() const { return failures == 0 && checks > 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  long sl_max = 30;          ///< sl-formula: exhaustive range of M
  long minima_max = 30;      ///< minkowski: exhaustive range of M
  long box_forms_max = 4;    ///< minima: range of M
  int box_radius = 3;        ///< minima: box |x_i| <= r
  int gon_lattices = 100;    ///< gon: sample size
  long gon_max = 50;         ///< gon: range of M
  double gon_constant = 50;  ///< gon: allowed envelope constant
  long za_max = 20;          ///< za-family: a = 1..za_max
  double disc_B = 15;        ///< disc-agreement / disc-bound: H_{2,1} <= disc_B
  double disc_bound = 4;     ///< disc-bound: allowed ratio
  long disc_family = 30;     ///< disc-bound: k = 1..disc_family
  std::vector<double> oracle_Bs{1, 2, 5, 10, 20, 30};
};

std::vector<std::string> suite_names();
/// Throws std::invalid_argument on an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

SuiteResult sl_formula(const SuiteOptions& opt);
SuiteResult minkowski(const SuiteOptions& opt);
SuiteResult minima(const SuiteOptions& opt);
SuiteResult gon(const SuiteOptions& opt);
SuiteResult za_family(const SuiteOptions& opt);
SuiteResult disc_agreement(const SuiteOptions& opt);
SuiteResult disc_bound(const SuiteOptions& opt);
SuiteResult oracle_count(const SuiteOptions& opt);

}  // namespace hilb2::suites
