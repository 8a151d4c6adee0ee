#pragma once

// Lattices attached to a linear form l: the product lattice S(1).l inside the
// quadratic forms Z^6, the rank-3 quotient S(2)/(S(1).l) with its projected
// inner product, successive minima and primitive-vector counts.

#include <array>
#include <cstdint>
#include <memory>
#include <string>

#include "hilb2/ellipsoid.hpp"
#include "hilb2/exactlin.hpp"

namespace hilb2::lattice {

using exactlin::IntMatrix;

/// Primitive, sign-canonical linear form a X0 + b X1 + c X2.
class LinearForm {
 public:
  LinearForm() = default;
  /// Divides by the content and makes the first nonzero entry positive.
  static LinearForm normalize(const Int3& raw);
  /// Requires an already primitive, sign-canonical triple.
  static LinearForm from_canonical(const Int3& abc);

  const Int3& coeffs() const noexcept { return abc_; }
  const Int& a() const noexcept { return abc_[0]; }
  const Int& b() const noexcept { return abc_[1]; }
  const Int& c() const noexcept { return abc_[2]; }
  /// max(|a|, |b|, |c|)
  Int height_max() const;
  /// a^2 + b^2 + c^2, the squared covolume of the rank-1 lattice.
  Int norm2() const;
  std::string to_string() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  explicit LinearForm(const Int3& abc) : abc_(abc) {}
  Int3 abc_{1, 0, 0};
};

struct IntLattice {
  std::size_t ambient_dim = 0;
  IntMatrix basis;
  Int covol2;

  static IntLattice from_basis(const IntMatrix& basis);
  std::size_t rank() const { return basis.rows(); }
};

/// Closed-form squared covolume of S(1).l (a sextic in a, b, c).
Int product_covol2_formula(const LinearForm& l);

/// Rows X0*l, X1*l, X2*l in the monomial basis of degree 2.
IntMatrix product_basis(const LinearForm& l);
IntLattice product_lattice(const LinearForm& l);

/// The quotient S(2)/(S(1).l).  All inner products are kept scaled by
/// P = covol2(S(1).l), which makes them integral: scaled_gram = P * gram.
class QuotientLattice {
 public:
  explicit QuotientLattice(const LinearForm& l);

  const LinearForm& source() const noexcept { return source_; }
  /// 3 x 6, rows are lifts of a reduced basis of the quotient.
  const IntMatrix& lift_basis() const noexcept { return lift_; }
  const Int& product_covol2() const noexcept { return p_; }
  const IntMatrix& scaled_gram() const noexcept { return k_; }
  exactlin::RationalGram gram() const;
  /// 1 / P
  Rat covol2() const { return Rat(1, 1) / Rat(p_); }

  /// Coordinates of the coset of q (6 coefficients) in the lift basis.
  Int3 coset_coords(std::span<const Int> q) const;
  /// Short representative of the coset with coordinates qbar.
  IntVec lift(const Int3& qbar) const;
  /// qbar^T (P * gram) qbar, which is the squared covolume of the rank-4 lattice
  /// spanned by S(1).l and the lift.
  Int scaled_norm(const Int3& qbar) const;
  Rat norm2(const Int3& qbar) const { return Rat(scaled_norm(qbar)) / Rat(p_); }

 private:
  LinearForm source_;
  IntMatrix product_;  // 3 x 6
  IntMatrix lift_;     // 3 x 6
  IntMatrix coords_;   // 6 x 3, qbar = q * coords_
  IntMatrix k_;        // 3 x 3
  IntMatrix adj_;      // adjugate of product_ * product_^T
  Int p_;
};

using QuotientPtr = std::shared_ptr<const QuotientLattice>;
QuotientPtr quotient(const LinearForm& l);

struct SuccessiveMinima {
  Rat l1sq, l2sq, l3sq;
  std::array<Int3, 3> witnesses;
};

/// Exact minima by enumeration of every coset vector with squared length at
/// most the longest reduced basis vector.
SuccessiveMinima successive_minima(const QuotientLattice& q);

/// Primitive coset vectors v with v^T (P * gram) v < threshold (or <= when
/// !strict), both signs counted, 0 excluded.  Mobius inversion over dilates.
std::uint64_t count_primitive_scaled(const QuotientLattice& q, const Rat& threshold, bool strict);

/// Same count by a per-column inclusion-exclusion on gcd(y2, y3).
std::uint64_t count_primitive_scaled_columns(const QuotientLattice& q, const Rat& threshold, bool strict);

/// Primitive coset vectors with |v| < R.
std::uint64_t count_primitive(const QuotientLattice& q, double R);
std::uint64_t count_primitive_columns(const QuotientLattice& q, double R);

/// (4 pi / 3 zeta(3)) R^3 / covol
double gon_main_term(const QuotientLattice& q, double R);
/// (lambda2 lambda3 R log*(R / lambda1) + lambda3 R^2) / covol
double gon_error_shape(const QuotientLattice& q, const SuccessiveMinima& m, double R);

/// Squared distance from x in Z^6 to the real span of S(1).l, exactly.
Rat dist_to_V(std::span<const Int> x, const LinearForm& l);

/// Mobius function on 0..n (index 0 unused).
std::vector<signed char> mobius_table(std::size_t n);

}  // namespace hilb2::lattice
