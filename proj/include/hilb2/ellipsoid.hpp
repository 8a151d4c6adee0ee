#pragma once

// Exact enumeration of integer points inside a ternary positive definite
// quadratic form ellipsoid { y : y^T K y <= T } (or < T).  Loops run y3 outer,
// y2 middle, y1 inner; every bound is an integer square-root computation, so
// no point is ever lost to rounding.  A 128-bit fast path is taken whenever
// the worst-case intermediate magnitudes of the instance provably fit.

#include <array>
#include <cstdint>
#include <functional>

#include "hilb2/exactlin.hpp"

namespace hilb2::ellipsoid {

using Point = std::array<long, 3>;

struct Region {
  exactlin::IntMatrix form;  ///< 3x3 symmetric positive definite integer matrix
  Int num;                   ///< threshold numerator (> 0)
  Int den = 1;               ///< threshold denominator (> 0)
  bool strict = false;       ///< y^T K y < num/den instead of <=
};

/// Region from a rational threshold.
Region make_region(const exactlin::IntMatrix& form, const Rat& threshold, bool strict);

/// Called once per column (y2, y3) whose y1-interval [lo, hi] is nonempty.
using ColumnFn = std::function<void(long y2, long y3, long lo, long hi)>;
using PointFn = std::function<void(const Point&)>;

void for_each_column(const Region& r, const ColumnFn& fn);
void for_each_point(const Region& r, const PointFn& fn);

/// Number of integer points in the region, the origin included.
std::uint64_t count_points(const Region& r);

/// True when the instance runs on the 128-bit path.
bool uses_fast_path(const Region& r);

Int evaluate(const exactlin::IntMatrix& form, const Point& y);

}  // namespace hilb2::ellipsoid
