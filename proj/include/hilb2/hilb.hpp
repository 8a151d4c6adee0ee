#pragma once

// Integral points of Hilb^2(P^2) as pairs (linear form, primitive coset of a
// quadratic form), ideal lattices and bounded-height enumeration by fibers.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hilb2/lattice.hpp"

namespace hilb2::hilb {

using lattice::LinearForm;
using lattice::QuotientPtr;

/// Coefficients on X0^2, X0X1, X0X2, X1^2, X1X2, X2^2.
struct QuadraticForm {
  std::array<Int, 6> c;
  static QuadraticForm from(std::initializer_list<long> v);
  bool is_zero() const;
};

class HilbPoint {
 public:
  HilbPoint(QuotientPtr q, const Int3& qbar);

  const LinearForm& ell() const { return quot_->source(); }
  const Int3& qbar() const noexcept { return qbar_; }
  const lattice::QuotientLattice& quotient() const { return *quot_; }
  const QuotientPtr& quotient_ptr() const noexcept { return quot_; }
  /// squared covolume of I(1) = a^2 + b^2 + c^2
  Int covol2_I1() const { return ell().norm2(); }
  /// squared covolume of I(2)
  const Int& covol2_I2() const noexcept { return covol2_I2_; }
  /// Short quadratic form representing the coset.
  IntVec q_lift() const { return quot_->lift(qbar_); }

  /// Same (l, coset) pair.
  bool same_point(const HilbPoint& o) const { return ell() == o.ell() && qbar_ == o.qbar_; }

 private:
  QuotientPtr quot_;
  Int3 qbar_;
  Int covol2_I2_;
};

/// Normalizes l, reduces q modulo S(1).l and checks primitivity of the coset.
HilbPoint canonicalize(const Int3& ell_raw, const QuadraticForm& q);
/// Same with a prebuilt quotient; qbar need not be sign-canonical.
HilbPoint canonicalize_coset(QuotientPtr quot, const Int3& qbar);

/// Monomials of degree e as exponent triples, ordered X0 first.
std::vector<std::array<int, 3>> monomials(int e);

/// Saturated lattice of degree-e forms in the ideal of the point.
lattice::IntLattice ideal_lattice(const HilbPoint& z, int e);

/// Exact test n1^(s-t) n2^t <= B^2 on squared covolumes, i.e. H_{s,t} <= B.
class HeightBound {
 public:
  HeightBound(double s, double t, double B);
  bool admits(const Int& n1, const Int& n2) const;
  /// Largest n2 with admits(n1, n2), or 0 if none.
  Int max_n2(const Int& n1) const;
  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  double B() const noexcept { return b_; }
  bool exact() const noexcept { return denom_ != 0; }

 private:
  double s_, t_, b_;
  long denom_ = 0;  // common denominator of s and t, 0 when not exact
  long es_ = 0, et_ = 0;
};

/// Largest M = max(|a|, |b|, |c|) for which some point can have H_{s,t} <= B.
long m_max(double s, double t, double B);

/// All primitive sign-canonical triples with max entry <= m, lexicographic.
std::vector<LinearForm> canonical_forms(long m);
/// The forms of canonical_forms(m) with first entry a, in the same order.
std::vector<LinearForm> canonical_forms_slab(long m, long a);

/// Number of points over l with covol(I(2)) <= Y.
std::uint64_t fiber_count(const LinearForm& l, double Y);
std::uint64_t fiber_count_scaled(const lattice::QuotientLattice& q, const Int& n2_max);

/// Sign-canonical primitive cosets over q with scaled norm <= n2_max, sorted.
std::vector<Int3> fiber_points(const lattice::QuotientLattice& q, const Int& n2_max);

/// Every point with H_{s,t} <= B, ordered by l then qbar.
std::vector<HilbPoint> enumerate_points(double s, double t, double B);

}  // namespace hilb2::hilb
