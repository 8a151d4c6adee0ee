#pragma once

// Brute-force cross-checks that share as little code as possible with the
// fast paths: explicit coefficient boxes, Gram determinants and gcd tests.

#include <cstdint>
#include <set>
#include <string>

#include "hilb2/hilb.hpp"

namespace hilb2::oracle {

/// Points with H_{s,t} <= B found by scanning linear forms up to the cutoff
/// plus a margin and, for each, a box of binary forms on the line l = 0
/// lifted back to ternary forms.  Keys are Hermite bases of I(1) and I(2).
std::set<std::string> naive_points(double s, double t, double B, long margin = 3);
std::uint64_t naive_count(double s, double t, double B, long margin = 3);

/// Key of a point in the same format as naive_points.
std::string point_key(const hilb::HilbPoint& z);

/// Primitive y with y^T K y < T (or <= T), both signs, by a plain box scan.
std::uint64_t naive_count_primitive(const exactlin::IntMatrix& form, const Rat& threshold, bool strict);

}  // namespace hilb2::oracle
