#pragma once

// Heights of points of Hilb^2(P^2), the binary quadratic form cut out on the
// line l = 0, the point class, and the discriminant computed three ways.

#include <optional>
#include <string>

#include "hilb2/hilb.hpp"

namespace hilb2::heights {

using hilb::HilbPoint;

/// A S^2 + B S T + C T^2
struct BinaryQuadraticForm {
  Int A, B, C;
  Int disc() const { return B * B - 4 * A * C; }
  friend bool operator==(const BinaryQuadraticForm&, const BinaryQuadraticForm&) = default;
};

enum class PointClass { Nonreduced, Split, Nonsplit };
std::string to_string(PointClass c);

struct SplitSolutions {
  Int3 v, w;
};

/// v = (g + alpha sqrt(D)) e + beta sqrt(D) f solves l = q = 0.
struct NonsplitParams {
  Int g, alpha, beta, D;
  Int3 e, f;
};

/// q evaluated at an integer vector.
Int evaluate_quadratic(std::span<const Int> q, const Int3& v);

/// q(S e + T f) without normalization.
BinaryQuadraticForm restrict_form(std::span<const Int> q, const Int3& e, const Int3& f);
/// Restriction on the Hermite kernel basis, divided by content and sign-normalized.
BinaryQuadraticForm restrict_to_line(const HilbPoint& z);

Int discriminant(const HilbPoint& z);
PointClass classify_disc(const Int& disc);
PointClass classify(const HilbPoint& z);

SplitSolutions split_solutions(const HilbPoint& z);
/// gcd of the cross product, squared.
Int disc_split_gcd(const SplitSolutions& sol);

NonsplitParams nonsplit_params(const HilbPoint& z);
Int disc_nonsplit(const NonsplitParams& p);
/// Index of (g + alpha sqrt(D), beta sqrt(D)) in Z[sqrt(D)], via Smith minors.
Int ideal_norm(const NonsplitParams& p);
Int ideal_norm_closed_form(const NonsplitParams& p);
/// Index of the ideal generated by the same elements in the ring of integers.
Int maximal_order_norm(const NonsplitParams& p);

/// Fundamental discriminant d and conductor f with D = f^2 d (D nonsquare).
struct FundamentalSplit {
  Int fundamental;
  Int conductor;
};
FundamentalSplit fundamental_split(const Int& D);

struct CovolumeValue {
  Int covol2;
  double value() const;
};
CovolumeValue height_e(const HilbPoint& z, int e);

double height_st(const HilbPoint& z, double s, double t);
/// H_{s,t} as an exact rational when it is one (integral s - t and t).
std::optional<Rat> height_st_exact(const HilbPoint& z, double s, double t);

/// Squared Le Rudulier height, from the definition.
Rat le_height_squared(const HilbPoint& z);
/// The same value from the Gram matrix of the kernel basis and the form.
Rat le_height_squared_closed_form(const HilbPoint& z);
double le_height(const HilbPoint& z);

/// |Disc| covol^4 I(1) / covol^2 I(2)
Rat disc_ratio(const HilbPoint& z);

}  // namespace hilb2::heights
