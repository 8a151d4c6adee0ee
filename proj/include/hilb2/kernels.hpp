#pragma once

// Batch kernels with an OpenMP version and a serial reference.

#include <cstdint>
#include <vector>

#include "hilb2/lattice.hpp"

namespace hilb2::kernels {

/// Result of scanning the box |x_i| <= r in Z^6 against one linear form.
struct DistanceScan {
  std::int64_t product_covol2 = 0;  ///< P
  std::int64_t min_numerator = 0;   ///< min of P dist^2 over x off the span
  std::uint64_t off_span = 0;       ///< number of x off the span
  std::uint64_t violations = 0;     ///< x with 49 M^4 dist^2 < 1
};

/// Every form must have max entry <= 8 and r <= 4 so that int64 is exact.
std::vector<DistanceScan> distance_scan(const std::vector<lattice::LinearForm>& forms, int r);
std::vector<DistanceScan> distance_scan_serial(const std::vector<lattice::LinearForm>& forms, int r);

}  // namespace hilb2::kernels
