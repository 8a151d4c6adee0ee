#include "hilb2/exactlin.hpp"

#include <algorithm>
#include <sstream>

#include "hilb2/errors.hpp"

namespace hilb2::exactlin {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw MathError(ErrorKind::InvalidArgument, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return {};
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw MathError(ErrorKind::InvalidArgument, "ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

IntVec IntMatrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return {r.begin(), r.end()};
}

void IntMatrix::append_row(std::span<const Int> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw MathError(ErrorKind::InvalidArgument, "row width mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::slice_rows(std::size_t begin, std::size_t end) const {
  IntMatrix s(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s(i - begin, j) = (*this)(i, j);
  return s;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw MathError(ErrorKind::InvalidArgument, "shape mismatch in product");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

// ---------------------------------------------------------------------------

RationalGram::RationalGram(std::size_t dim) : dim_(dim), data_(dim * dim) {}

Rat RationalGram::determinant() const {
  std::vector<Rat> a = data_;
  Rat det = 1;
  const std::size_t n = dim_;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p * n + c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[p * n + k], a[c * n + k]);
      det = -det;
    }
    det *= a[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r * n + c] == 0) continue;
      Rat f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

bool RationalGram::is_symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool RationalGram::is_positive_definite() const {
  for (std::size_t k = 1; k <= dim_; ++k) {
    RationalGram lead(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = (*this)(i, j);
    if (lead.determinant() <= 0) return false;
  }
  return true;
}

Rat RationalGram::evaluate(std::span<const Int> x) const {
  Rat s = 0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * x[i] * x[j];
  return s;
}

// ---------------------------------------------------------------------------

Int content(std::span<const Int> v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool sign_canonical(std::span<const Int> v) {
  for (const auto& x : v)
    if (x != 0) return x > 0;
  return false;
}

IntVec primitive_part(std::span<const Int> v) {
  Int g = content(v);
  if (g == 0) throw MathError(ErrorKind::ZeroInput, "zero vector has no primitive part");
  IntVec out(v.begin(), v.end());
  if (!sign_canonical(v)) g = -g;
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int3 cross(const Int3& a, const Int3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int round_nearest(const Rat& q) {
  Rat shifted = q + Rat(1, 2);
  return floor_div(shifted.get_num(), shifted.get_den());
}

bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw MathError(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Int det = a(n - 1, n - 1);
  return sign > 0 ? det : Int(-det);
}

// ---------------------------------------------------------------------------
// Hermite normal form by extended-gcd row operations.

namespace {

struct RowOps {
  IntMatrix& h;
  IntMatrix& u;
  IntMatrix* u_inv;

  void swap(std::size_t i, std::size_t j) {
    h.swap_rows(i, j);
    u.swap_rows(i, j);
    if (u_inv)
      for (std::size_t k = 0; k < u_inv->rows(); ++k) std::swap((*u_inv)(k, i), (*u_inv)(k, j));
  }
  void negate(std::size_t i) {
    for (auto& v : h.row(i)) v = -v;
    for (auto& v : u.row(i)) v = -v;
    if (u_inv)
      for (std::size_t k = 0; k < u_inv->rows(); ++k) (*u_inv)(k, i) = -(*u_inv)(k, i);
  }
  // row_k -= t * row_r
  void subtract(std::size_t k, std::size_t r, const Int& t) {
    if (t == 0) return;
    for (std::size_t c = 0; c < h.cols(); ++c) h(k, c) -= t * h(r, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(k, c) -= t * u(r, c);
    if (u_inv)
      for (std::size_t q = 0; q < u_inv->rows(); ++q) (*u_inv)(q, r) += t * (*u_inv)(q, k);
  }
  // [row_r; row_i] <- [[x, y], [-q, p]] [row_r; row_i] with x p + y q = 1
  void combine(std::size_t r, std::size_t i, const Int& x, const Int& y, const Int& p, const Int& q) {
    auto apply = [&](IntMatrix& m) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Int a = m(r, c), b = m(i, c);
        m(r, c) = x * a + y * b;
        m(i, c) = p * b - q * a;
      }
    };
    apply(h);
    apply(u);
    if (u_inv) {
      // inverse of [[x, y], [-q, p]] is [[p, -y], [q, x]], applied on columns
      for (std::size_t k = 0; k < u_inv->rows(); ++k) {
        Int a = (*u_inv)(k, r), b = (*u_inv)(k, i);
        (*u_inv)(k, r) = p * a + q * b;
        (*u_inv)(k, i) = x * b - y * a;
      }
    }
  }
};

}  // namespace

HermiteForm hermite_rows(const IntMatrix& m, bool with_inverse) {
  HermiteForm out;
  out.h = m;
  out.u = IntMatrix::identity(m.rows());
  if (with_inverse) out.u_inv = IntMatrix::identity(m.rows());
  RowOps ops{out.h, out.u, with_inverse ? &out.u_inv : nullptr};
  const std::size_t rows = m.rows();
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < rows; ++col) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (out.h(i, col) == 0) continue;
      if (out.h(r, col) == 0) {
        ops.swap(r, i);
        continue;
      }
      Int x, y;
      Int g = xgcd(out.h(r, col), out.h(i, col), x, y);
      Int p = out.h(r, col) / g;
      Int q = out.h(i, col) / g;
      ops.combine(r, i, x, y, p, q);
    }
    if (out.h(r, col) == 0) continue;
    if (out.h(r, col) < 0) ops.negate(r);
    for (std::size_t k = 0; k < r; ++k) ops.subtract(k, r, floor_div(out.h(k, col), out.h(r, col)));
    out.pivots.push_back(col);
    ++r;
  }
  out.rank = r;
  return out;
}

IntMatrix hnf_basis(const IntMatrix& m) {
  auto hf = hermite_rows(m);
  return hf.h.slice_rows(0, hf.rank);
}

IntMatrix integer_kernel(const IntMatrix& m) {
  auto hf = hermite_rows(m.transpose());
  return hf.u.slice_rows(hf.rank, hf.u.rows());
}

Int gram_det2(const IntMatrix& basis) {
  if (basis.empty()) throw MathError(ErrorKind::ZeroInput, "empty basis");
  IntMatrix g(basis.rows(), basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = i; j < basis.rows(); ++j) {
      g(i, j) = dot(basis.row(i), basis.row(j));
      g(j, i) = g(i, j);
    }
  Int d = determinant(g);
  if (d == 0) throw MathError(ErrorKind::RankDeficient, "rank deficient");
  return d;
}

IntMatrix saturate(const IntMatrix& generators) {
  if (generators.empty() || generators.is_zero())
    throw MathError(ErrorKind::ZeroInput, "cannot saturate the zero lattice");
  IntMatrix orth = integer_kernel(generators);
  if (orth.rows() == 0) return IntMatrix::identity(generators.cols());
  return hnf_basis(integer_kernel(orth));
}

KernelBasis kernel_basis(const Int3& ell) {
  IntMatrix row(1, 3);
  for (std::size_t i = 0; i < 3; ++i) row(0, i) = ell[i];
  if (row.is_zero()) throw MathError(ErrorKind::ZeroInput, "zero linear form");
  IntMatrix k = hnf_basis(integer_kernel(row));
  check_internal(k.rows() == 2, "kernel of a nonzero linear form must have rank 2");
  return {{k(0, 0), k(0, 1), k(0, 2)}, {k(1, 0), k(1, 1), k(1, 2)}};
}

Int smith_minor_gcd(const IntMatrix& columns, std::size_t n) {
  if (columns.rows() != n || columns.cols() < n)
    throw MathError(ErrorKind::NotFiniteIndex, "not finite index");
  const std::size_t m = columns.cols();
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  Int g = 0;
  IntMatrix minor(n, n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) minor(i, j) = columns(i, pick[j]);
    Int d = determinant(minor);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    // next combination
    std::size_t k = n;
    while (k > 0 && pick[k - 1] == m - n + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (g == 0) throw MathError(ErrorKind::NotFiniteIndex, "not finite index");
  return g;
}

// ---------------------------------------------------------------------------

LllResult lll_gram(const IntMatrix& gram0) {
  const std::size_t n = gram0.rows();
  IntMatrix u = IntMatrix::identity(n);
  IntMatrix g = gram0;
  const Rat delta(99, 100);

  auto update_gram = [&] {
    IntMatrix ut = u.transpose();
    g = u * gram0 * ut;
  };

  std::vector<Rat> mu(n * n), bstar(n);
  auto gso = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rat s = Rat(g(i, j));
        for (std::size_t k = 0; k < j; ++k) s -= mu[i * n + k] * mu[j * n + k] * bstar[k];
        mu[i * n + j] = s / bstar[j];
      }
      Rat s = Rat(g(i, i));
      for (std::size_t k = 0; k < i; ++k) s -= mu[i * n + k] * mu[i * n + k] * bstar[k];
      bstar[i] = s;
      if (bstar[i] <= 0) throw InternalError("lll_gram: Gram matrix is not positive definite");
    }
  };

  if (n <= 1) return {u, g};
  gso();
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Int r = round_nearest(mu[k * n + jj]);
      if (r == 0) continue;
      for (std::size_t c = 0; c < n; ++c) u(k, c) -= r * u(jj, c);
      update_gram();
      gso();
    }
    const Rat& m = mu[k * n + k - 1];
    if (bstar[k] >= (delta - m * m) * bstar[k - 1]) {
      ++k;
    } else {
      u.swap_rows(k, k - 1);
      update_gram();
      gso();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return {u, g};
}

std::string to_string(std::span<const Int> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

}  // namespace hilb2::exactlin
