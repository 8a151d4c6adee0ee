#include "hilb2/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hilb2/constants.hpp"
#include "hilb2/errors.hpp"

namespace hilb2::lattice {

using exactlin::dot;

// ---------------------------------------------------------------------------

LinearForm LinearForm::normalize(const Int3& raw) {
  if (raw[0] == 0 && raw[1] == 0 && raw[2] == 0) throw MathError(ErrorKind::ZeroInput, "zero linear form");
  IntVec p = exactlin::primitive_part(raw);
  return LinearForm({p[0], p[1], p[2]});
}

LinearForm LinearForm::from_canonical(const Int3& abc) {
  if (exactlin::content(abc) != 1 || !exactlin::sign_canonical(abc))
    throw MathError(ErrorKind::InvalidArgument, "linear form is not primitive and sign-canonical");
  return LinearForm(abc);
}

Int LinearForm::height_max() const { return std::max({abs(abc_[0]), abs(abc_[1]), abs(abc_[2])}); }

Int LinearForm::norm2() const { return abc_[0] * abc_[0] + abc_[1] * abc_[1] + abc_[2] * abc_[2]; }

std::string LinearForm::to_string() const { return exactlin::to_string(abc_); }

IntLattice IntLattice::from_basis(const IntMatrix& basis) {
  return {basis.cols(), basis, exactlin::gram_det2(basis)};
}

// ---------------------------------------------------------------------------

Int product_covol2_formula(const LinearForm& l) {
  const Int a2 = l.a() * l.a(), b2 = l.b() * l.b(), c2 = l.c() * l.c();
  return a2 * a2 * a2 + 2 * b2 * a2 * a2 + 2 * c2 * a2 * a2 + 2 * b2 * b2 * a2 + 5 * c2 * b2 * a2 +
         2 * c2 * c2 * a2 + b2 * b2 * b2 + 2 * c2 * b2 * b2 + 2 * c2 * c2 * b2 + c2 * c2 * c2;
}

IntMatrix product_basis(const LinearForm& l) {
  const Int &a = l.a(), &b = l.b(), &c = l.c();
  // monomials X0^2, X0X1, X0X2, X1^2, X1X2, X2^2
  IntMatrix m(3, 6);
  m(0, 0) = a, m(0, 1) = b, m(0, 2) = c;
  m(1, 1) = a, m(1, 3) = b, m(1, 4) = c;
  m(2, 2) = a, m(2, 4) = b, m(2, 5) = c;
  return m;
}

IntLattice product_lattice(const LinearForm& l) { return IntLattice::from_basis(product_basis(l)); }

namespace {

IntMatrix adjugate3(const IntMatrix& m) {
  IntMatrix adj(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj(i, j) = m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    }
  return adj;
}

IntMatrix gram_of(const IntMatrix& rows) {
  IntMatrix g(rows.rows(), rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.rows(); ++j) g(i, j) = dot(rows.row(i), rows.row(j));
  return g;
}

Int3 mat_vec(const IntMatrix& a, std::span<const Int> x) {
  Int3 out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = dot(a.row(i), x);
  return out;
}

Int quad3(const IntMatrix& k, const Int3& x) {
  Int s = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += k(i, j) * x[i] * x[j];
  return s;
}

}  // namespace

QuotientLattice::QuotientLattice(const LinearForm& l) : source_(l), product_(product_basis(l)) {
  const IntMatrix at = product_.transpose();
  auto hf = exactlin::hermite_rows(at, true);
  check_internal(hf.rank == 3, "product lattice must have rank 3");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      check_internal(hf.h(i, j) == (i == j ? 1 : 0), "product lattice must be primitive");

  IntMatrix w(3, 6), c(6, 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t col = 0; col < 6; ++col) {
      w(j, col) = hf.u_inv(col, 3 + j);
      c(col, j) = hf.u(3 + j, col);
    }

  const IntMatrix aat = gram_of(product_);
  p_ = exactlin::determinant(aat);
  adj_ = adjugate3(aat);
  check_internal(p_ == product_covol2_formula(l), "product covolume disagrees with closed form");

  auto scaled = [&](const IntMatrix& basis) {
    IntMatrix k(3, 3);
    std::array<Int3, 3> proj;
    for (std::size_t j = 0; j < 3; ++j) proj[j] = mat_vec(product_, basis.row(j));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        Int cross = 0;
        for (std::size_t r = 0; r < 3; ++r)
          for (std::size_t s = 0; s < 3; ++s) cross += proj[i][r] * adj_(r, s) * proj[j][s];
        k(i, j) = p_ * dot(basis.row(i), basis.row(j)) - cross;
      }
    return k;
  };

  auto red = exactlin::lll_gram(scaled(w));
  const IntMatrix& t = red.transform;
  lift_ = t * w;
  coords_ = c * adjugate3(t);
  if (exactlin::determinant(t) < 0)
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 3; ++j) coords_(i, j) = -coords_(i, j);
  k_ = red.gram;

  for (std::size_t j = 0; j < 3; ++j) {
    IntVec reduced = lift(Int3{j == 0 ? 1 : 0, j == 1 ? 1 : 0, j == 2 ? 1 : 0});
    std::copy(reduced.begin(), reduced.end(), lift_.row(j).begin());
  }
  check_internal(scaled(lift_) == k_, "reduced Gram mismatch");
  check_internal(exactlin::determinant(k_) == p_ * p_, "quotient Gram determinant must be P^2");
  IntMatrix id = lift_ * coords_;
  check_internal(id == IntMatrix::identity(3), "coordinate map is not dual to the lift basis");
  check_internal((product_ * coords_).is_zero(), "coordinate map must vanish on the product lattice");
}

exactlin::RationalGram QuotientLattice::gram() const {
  exactlin::RationalGram g(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      g(i, j) = Rat(k_(i, j), p_);
      g(i, j).canonicalize();
    }
  return g;
}

Int3 QuotientLattice::coset_coords(std::span<const Int> q) const {
  if (q.size() != 6) throw MathError(ErrorKind::InvalidArgument, "quadratic form needs 6 coefficients");
  Int3 out;
  for (std::size_t j = 0; j < 3; ++j) {
    Int s = 0;
    for (std::size_t i = 0; i < 6; ++i) s += q[i] * coords_(i, j);
    out[j] = s;
  }
  return out;
}

IntVec QuotientLattice::lift(const Int3& qbar) const {
  IntVec v(6);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 6; ++i) v[i] += qbar[j] * lift_(j, i);
  // subtract the nearest point of S(1).l in the rounded least squares sense
  Int3 pv = mat_vec(product_, v);
  for (std::size_t r = 0; r < 3; ++r) {
    Int num = 0;
    for (std::size_t s = 0; s < 3; ++s) num += adj_(r, s) * pv[s];
    Int k = exactlin::round_nearest(Rat(num, p_));
    if (k == 0) continue;
    for (std::size_t i = 0; i < 6; ++i) v[i] -= k * product_(r, i);
  }
  return v;
}

Int QuotientLattice::scaled_norm(const Int3& qbar) const { return quad3(k_, qbar); }

QuotientPtr quotient(const LinearForm& l) { return std::make_shared<const QuotientLattice>(l); }

// ---------------------------------------------------------------------------

SuccessiveMinima successive_minima(const QuotientLattice& q) {
  const IntMatrix& k = q.scaled_gram();
  Int bound = std::max({k(0, 0), k(1, 1), k(2, 2)});
  struct Cand {
    Int value;
    ellipsoid::Point y;
  };
  std::vector<Cand> cands;
  ellipsoid::for_each_point(ellipsoid::make_region(k, Rat(bound), false), [&](const ellipsoid::Point& y) {
    if (y[0] == 0 && y[1] == 0 && y[2] == 0) return;
    cands.push_back({ellipsoid::evaluate(k, y), y});
  });
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.y > b.y;
  });
  SuccessiveMinima out;
  std::array<Int, 3> values;
  std::size_t found = 0;
  auto to3 = [](const ellipsoid::Point& y) { return Int3{y[0], y[1], y[2]}; };
  for (const auto& c : cands) {
    Int3 v = to3(c.y);
    bool independent = false;
    if (found == 0) {
      independent = true;
    } else if (found == 1) {
      Int3 x = exactlin::cross(out.witnesses[0], v);
      independent = x[0] != 0 || x[1] != 0 || x[2] != 0;
    } else {
      independent = dot(exactlin::cross(out.witnesses[0], out.witnesses[1]), v) != 0;
    }
    if (!independent) continue;
    out.witnesses[found] = v;
    values[found] = c.value;
    if (++found == 3) break;
  }
  check_internal(found == 3, "minima search radius too small");
  const Rat p(q.product_covol2());
  out.l1sq = Rat(values[0]) / p;
  out.l2sq = Rat(values[1]) / p;
  out.l3sq = Rat(values[2]) / p;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<signed char> mobius_table(std::size_t n) {
  std::vector<signed char> mu(n + 1, 1);
  std::vector<bool> composite(n + 1, false);
  std::vector<std::size_t> primes;
  mu[0] = 0;
  for (std::size_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::size_t p : primes) {
      if (i * p > n) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = static_cast<signed char>(-mu[i]);
    }
  }
  return mu;
}

namespace {

int mobius_single(unsigned long d) {
  int sign = 1;
  for (unsigned long p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    d /= p;
    if (d % p == 0) return 0;
    sign = -sign;
  }
  if (d > 1) sign = -sign;
  return sign;
}

std::vector<unsigned long> prime_divisors(unsigned long g) {
  std::vector<unsigned long> ps;
  for (unsigned long p = 2; p * p <= g; ++p) {
    if (g % p) continue;
    ps.push_back(p);
    while (g % p == 0) g /= p;
  }
  if (g > 1) ps.push_back(g);
  return ps;
}

long floor_div_long(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Largest d >= 0 with d^2 * value * den < num (strict) or <= num.
unsigned long max_dilate(const Int& value, const Int& num, const Int& den, bool strict) {
  Int lim = strict ? Int(num - 1) : num;
  Int q = exactlin::floor_div(lim, value * den);
  if (q <= 0) return 0;
  Int s;
  mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
  return s.get_ui();
}

constexpr std::uint64_t kSwitchToPoints = 4096;

}  // namespace

std::uint64_t count_primitive_scaled(const QuotientLattice& q, const Rat& threshold, bool strict) {
  if (threshold <= 0) return 0;
  const IntMatrix& k = q.scaled_gram();
  const Int num = threshold.get_num(), den = threshold.get_den();
  std::int64_t total = 0;
  for (unsigned long d = 1;; ++d) {
    ellipsoid::Region r{k, num, den * d * d, strict};
    std::uint64_t n = ellipsoid::count_points(r) - 1;
    if (n == 0) break;
    if (n > kSwitchToPoints) {
      total += mobius_single(d) * static_cast<std::int64_t>(n);
      continue;
    }
    // Few points left: every remaining dilate d' >= d of a point w counts
    // mu(d') once, so sum the Mertens function over each point's range.
    std::vector<unsigned long> reach;
    reach.reserve(n);
    unsigned long top = d;
    ellipsoid::for_each_point(r, [&](const ellipsoid::Point& y) {
      if (y[0] == 0 && y[1] == 0 && y[2] == 0) return;
      unsigned long m = max_dilate(ellipsoid::evaluate(k, y), num, den, strict);
      reach.push_back(m);
      top = std::max(top, m);
    });
    auto mu = mobius_table(top);
    std::vector<std::int64_t> mertens(top + 1, 0);
    for (std::size_t i = 1; i <= top; ++i) mertens[i] = mertens[i - 1] + mu[i];
    for (unsigned long m : reach) total += mertens[m] - mertens[d - 1];
    break;
  }
  check_internal(total >= 0, "negative primitive count");
  return static_cast<std::uint64_t>(total);
}

std::uint64_t count_primitive_scaled_columns(const QuotientLattice& q, const Rat& threshold, bool strict) {
  if (threshold <= 0) return 0;
  std::uint64_t total = 0;
  ellipsoid::for_each_column(
      ellipsoid::make_region(q.scaled_gram(), threshold, strict), [&](long y2, long y3, long lo, long hi) {
        if (y2 == 0 && y3 == 0) {
          total += (lo <= -1 && -1 <= hi) + (lo <= 1 && 1 <= hi);
          return;
        }
        unsigned long g = std::gcd(static_cast<unsigned long>(std::labs(y2)), static_cast<unsigned long>(std::labs(y3)));
        auto ps = prime_divisors(g);
        std::int64_t c = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << ps.size()); ++mask) {
          long d = 1;
          int sign = 1;
          for (std::size_t i = 0; i < ps.size(); ++i)
            if (mask >> i & 1) {
              d *= static_cast<long>(ps[i]);
              sign = -sign;
            }
          c += sign * (floor_div_long(hi, d) - floor_div_long(lo - 1, d));
        }
        total += static_cast<std::uint64_t>(c);
      });
  return total;
}

namespace {
Rat scaled_radius(const QuotientLattice& q, double R) {
  if (!(R > 0) || !std::isfinite(R)) throw MathError(ErrorKind::InvalidArgument, "radius must be positive");
  Rat r(R);
  return r * r * Rat(q.product_covol2());
}
}  // namespace

std::uint64_t count_primitive(const QuotientLattice& q, double R) {
  return count_primitive_scaled(q, scaled_radius(q, R), true);
}

std::uint64_t count_primitive_columns(const QuotientLattice& q, double R) {
  return count_primitive_scaled_columns(q, scaled_radius(q, R), true);
}

double gon_main_term(const QuotientLattice& q, double R) {
  long double covol = 1.0L / std::sqrt(static_cast<long double>(q.product_covol2().get_d()));
  return static_cast<double>(constants::kPrimitiveBallDensity * R * R * R / covol);
}

double gon_error_shape(const QuotientLattice& q, const SuccessiveMinima& m, double R) {
  const double l1 = std::sqrt(m.l1sq.get_d()), l2 = std::sqrt(m.l2sq.get_d()), l3 = std::sqrt(m.l3sq.get_d());
  const double logstar = std::max(1.0, std::log(R / l1));
  const double covol = 1.0 / std::sqrt(q.product_covol2().get_d());
  return (l2 * l3 * R * logstar + l3 * R * R) / covol;
}

Rat dist_to_V(std::span<const Int> x, const LinearForm& l) {
  if (x.size() != 6) throw MathError(ErrorKind::InvalidArgument, "expected a vector in Z^6");
  const IntMatrix a = product_basis(l);
  const IntMatrix aat = gram_of(a);
  const Int p = exactlin::determinant(aat);
  const IntMatrix adj = adjugate3(aat);
  Int3 ax = mat_vec(a, x);
  Int num = p * dot(x, x) - quad3(adj, ax);
  Rat d(num, p);
  d.canonicalize();
  return d;
}

}  // namespace hilb2::lattice
