#pragma once

// Mathematical constants to 50 significant digits.  The decimal strings feed
// the exact/multiprecision paths; the long double values feed reports.

namespace hilb2::constants {

inline constexpr const char* kPiDigits = "3.1415926535897932384626433832795028841971693993751";
inline constexpr const char* kZeta3Digits = "1.2020569031595942853997381615114499907649862923405";

inline constexpr long double kPi = 3.1415926535897932384626433832795028841971693993751L;
inline constexpr long double kZeta3 = 1.2020569031595942853997381615114499907649862923405L;

/// 4 pi / (3 zeta(3)): density of primitive vectors in a unimodular rank-3 lattice.
inline constexpr long double kPrimitiveBallDensity = 4.0L * kPi / (3.0L * kZeta3);

/// 2 (24 + pi^2) / (3 zeta(3)^2).
inline constexpr long double kLeRudulierConstant = 2.0L * (24.0L + kPi * kPi) / (3.0L * kZeta3 * kZeta3);

}  // namespace hilb2::constants
