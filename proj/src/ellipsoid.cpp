#include "hilb2/ellipsoid.hpp"

#include <cmath>
#include <optional>

#include "hilb2/errors.hpp"

namespace hilb2::ellipsoid {

namespace {

using i128 = __int128;

i128 to_i128(const Int& v) {
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  i128 m = (static_cast<i128>(limbs[1]) << 64) | limbs[0];
  return v < 0 ? -m : m;
}

i128 isqrt(i128 n) {
  if (n <= 0) return 0;
  i128 s = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}
Int isqrt(const Int& n) {
  if (n <= 0) return 0;
  Int s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  return s;
}

i128 fdiv(i128 a, i128 b) {
  i128 q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}
i128 cdiv(i128 a, i128 b) { return -fdiv(-a, b); }
Int fdiv(const Int& a, const Int& b) { return exactlin::floor_div(a, b); }
Int cdiv(const Int& a, const Int& b) { return exactlin::ceil_div(a, b); }

long to_long(i128 v) { return static_cast<long>(v); }

template <class I>
I convert(const Int& v);
template <>
i128 convert<i128>(const Int& v) {
  return to_i128(v);
}
template <>
Int convert<Int>(const Int& v) {
  return v;
}
long to_long(const Int& v) { return v.get_si(); }

// Integer solutions of a x^2 + b x + c <= 0 (or < 0), a > 0.
template <class I>
bool interval(const I& a, const I& b, const I& c, bool strict, I& lo, I& hi) {
  I d = b * b - 4 * a * c;
  if (d < 0) return false;
  I s = isqrt(d);
  I two_a = 2 * a;
  if (strict && s * s == d) {
    if (s == 0) return false;
    lo = cdiv(I(-b - s + 1), two_a);
    hi = fdiv(I(-b + s - 1), two_a);
  } else {
    lo = cdiv(I(-b - s), two_a);
    hi = fdiv(I(-b + s), two_a);
  }
  return lo <= hi;
}

template <class I, class F>
void run(const Region& r, F&& fn) {
  const auto& K = r.form;
  const I k11 = convert<I>(K(0, 0)), k12 = convert<I>(K(0, 1)), k13 = convert<I>(K(0, 2));
  const I k22 = convert<I>(K(1, 1)), k23 = convert<I>(K(1, 2)), k33 = convert<I>(K(2, 2));
  const I tn = convert<I>(r.num), td = convert<I>(r.den);
  const I a2 = k11 * k22 - k12 * k12;
  const I h2 = k11 * k23 - k12 * k13;
  const I c2 = k11 * k33 - k13 * k13;
  const I det = k11 * (k22 * k33 - k23 * k23) - k12 * (k12 * k33 - k23 * k13) + k13 * (k12 * k23 - k22 * k13);

  I lo3, hi3;
  if (!interval<I>(I(det * td), I(0), I(-(a2 * tn)), false, lo3, hi3)) return;
  for (long y3 = to_long(lo3); y3 <= to_long(hi3); ++y3) {
    const I Y3(y3);
    I lo2, hi2;
    if (!interval<I>(I(a2 * td), I(2 * h2 * Y3 * td), I(c2 * Y3 * Y3 * td - k11 * tn), false, lo2, hi2))
      continue;
    for (long y2 = to_long(lo2); y2 <= to_long(hi2); ++y2) {
      const I Y2(y2);
      const I q23 = k22 * Y2 * Y2 + 2 * k23 * Y2 * Y3 + k33 * Y3 * Y3;
      I lo1, hi1;
      if (!interval<I>(I(k11 * td), I(2 * td * (k12 * Y2 + k13 * Y3)), I(td * q23 - tn), r.strict, lo1, hi1))
        continue;
      fn(y2, y3, to_long(lo1), to_long(hi1));
    }
  }
}

Int det3(const exactlin::IntMatrix& K) { return exactlin::determinant(K); }

// Worst-case magnitude of every intermediate product, used to pick the path.
bool fits_128(const Region& r) {
  const auto& K = r.form;
  Int kmax = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) kmax = std::max<Int>(kmax, abs(K(i, j)));
  Int det = det3(K);
  // |y_i|^2 <= T * adj_ii / det
  Int ymax = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t p = (i + 1) % 3, q = (i + 2) % 3;
    Int adj = K(p, p) * K(q, q) - K(p, q) * K(q, p);
    Int bound = isqrt(exactlin::floor_div(r.num * adj, r.den * det)) + 1;
    ymax = std::max(ymax, bound);
  }
  check_internal(ymax < (Int(1) << 62), "ellipsoid too large to enumerate");
  const Int& td = r.den;
  const Int& tn = r.num;
  Int k2 = kmax * kmax;
  Int terms[] = {
      // inner level
      Int(16 * td * td * k2 * ymax * ymax + 4 * kmax * td * (9 * td * kmax * ymax * ymax + tn)),
      // middle level
      Int(16 * k2 * k2 * ymax * ymax * td * td + 8 * k2 * td * (2 * k2 * ymax * ymax * td + kmax * tn)),
      // outer level
      Int(48 * k2 * k2 * kmax * td * tn),
  };
  Int limit = Int(1) << 124;
  for (const auto& t : terms)
    if (t >= limit) return false;
  return true;
}

}  // namespace

Region make_region(const exactlin::IntMatrix& form, const Rat& threshold, bool strict) {
  if (threshold <= 0) throw MathError(ErrorKind::InvalidArgument, "threshold must be positive");
  return {form, threshold.get_num(), threshold.get_den(), strict};
}

bool uses_fast_path(const Region& r) { return fits_128(r); }

void for_each_column(const Region& r, const ColumnFn& fn) {
  if (r.form.rows() != 3 || r.form.cols() != 3) throw MathError(ErrorKind::InvalidArgument, "form must be 3x3");
  if (r.num <= 0 || r.den <= 0) return;
  if (fits_128(r))
    run<i128>(r, fn);
  else
    run<Int>(r, fn);
}

void for_each_point(const Region& r, const PointFn& fn) {
  for_each_column(r, [&](long y2, long y3, long lo, long hi) {
    for (long y1 = lo; y1 <= hi; ++y1) fn({y1, y2, y3});
  });
}

std::uint64_t count_points(const Region& r) {
  std::uint64_t n = 0;
  for_each_column(r, [&](long, long, long lo, long hi) { n += static_cast<std::uint64_t>(hi - lo + 1); });
  return n;
}

Int evaluate(const exactlin::IntMatrix& K, const Point& y) {
  Int s = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += K(i, j) * y[i] * y[j];
  return s;
}

}  // namespace hilb2::ellipsoid
