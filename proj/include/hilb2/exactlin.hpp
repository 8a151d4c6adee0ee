#pragma once

// Exact integer and rational linear algebra over GMP.

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hilb2 {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using Int3 = std::array<Int, 3>;

namespace exactlin {

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<Int> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Int> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  IntVec row_vector(std::size_t i) const;
  void append_row(std::span<const Int> r);
  void swap_rows(std::size_t i, std::size_t j);

  IntMatrix transpose() const;
  IntMatrix slice_rows(std::size_t begin, std::size_t end) const;
  bool is_zero() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Symmetric matrix of rationals used as an inner product.
class RationalGram {
 public:
  RationalGram() = default;
  explicit RationalGram(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  Rat determinant() const;
  bool is_symmetric() const;
  /// All leading principal minors strictly positive.
  bool is_positive_definite() const;
  /// x^T G x for an integer vector x.
  Rat evaluate(std::span<const Int> x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Rat> data_;
};

// -- scalar helpers -------------------------------------------------------

Int content(std::span<const Int> v);
/// Divide by the content and flip sign so that the first nonzero entry is positive.
IntVec primitive_part(std::span<const Int> v);
bool sign_canonical(std::span<const Int> v);
Int dot(std::span<const Int> a, std::span<const Int> b);
Int3 cross(const Int3& a, const Int3& b);
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);
/// Nearest integer, ties rounded up.
Int round_nearest(const Rat& q);
bool is_perfect_square(const Int& n);
/// Returns g = gcd(a, b) >= 0 with g = x*a + y*b.
Int xgcd(const Int& a, const Int& b, Int& x, Int& y);

// -- matrices ---------------------------------------------------------------

/// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntMatrix& m);

struct HermiteForm {
  IntMatrix h;      ///< row echelon form, positive pivots, reduced above pivots
  IntMatrix u;      ///< unimodular, u * input == h
  IntMatrix u_inv;  ///< inverse of u (only when requested)
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

HermiteForm hermite_rows(const IntMatrix& m, bool with_inverse = false);

/// Nonzero rows of the Hermite normal form of the row span.
IntMatrix hnf_basis(const IntMatrix& m);

/// Rows spanning the saturated lattice {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// det(B B^T) for the rows of B: the squared covolume of their span.
/// Throws MathError(RankDeficient) when the rows are dependent.
Int gram_det2(const IntMatrix& basis);

/// Hermite basis of {v : n v in span_Z(generators) for some n != 0}.
IntMatrix saturate(const IntMatrix& generators);

struct KernelBasis {
  Int3 e;
  Int3 f;
};

/// Hermite basis of the rank-2 lattice {v in Z^3 : l(v) = 0} for a primitive l.
KernelBasis kernel_basis(const Int3& ell);

/// gcd of all n-by-n minors of an n-row matrix whose columns are the generators.
/// Throws MathError(NotFiniteIndex) when the columns do not have full rank n.
Int smith_minor_gcd(const IntMatrix& columns, std::size_t n);

// -- reduction ------------------------------------------------------------

struct LllResult {
  IntMatrix transform;  ///< rows express the new basis in the old one
  IntMatrix gram;       ///< Gram matrix of the new basis
};

/// LLL reduction (delta = 99/100) driven entirely by an integral positive definite Gram.
LllResult lll_gram(const IntMatrix& gram);

std::string to_string(std::span<const Int> v);

}  // namespace exactlin
}  // namespace hilb2
