#include "hilb2/hilb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hilb2/errors.hpp"
#include "hilb2/parallel.hpp"

namespace hilb2::hilb {

using exactlin::IntMatrix;

QuadraticForm QuadraticForm::from(std::initializer_list<long> v) {
  if (v.size() != 6) throw MathError(ErrorKind::InvalidArgument, "quadratic form needs 6 coefficients");
  QuadraticForm q;
  std::size_t i = 0;
  for (long x : v) q.c[i++] = x;
  return q;
}

bool QuadraticForm::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const Int& x) { return x == 0; });
}

HilbPoint::HilbPoint(QuotientPtr q, const Int3& qbar)
    : quot_(std::move(q)), qbar_(qbar), covol2_I2_(quot_->scaled_norm(qbar)) {}

HilbPoint canonicalize_coset(QuotientPtr quot, const Int3& qbar) {
  Int g = exactlin::content(qbar);
  if (g == 0) throw MathError(ErrorKind::QInSpan, "q in span");
  if (g != 1) throw MathError(ErrorKind::NonPrimitiveLambda2, "non-primitive Λ₂");
  Int3 v = qbar;
  if (!exactlin::sign_canonical(v))
    for (auto& x : v) x = -x;
  return HilbPoint(std::move(quot), v);
}

HilbPoint canonicalize(const Int3& ell_raw, const QuadraticForm& q) {
  LinearForm l = LinearForm::normalize(ell_raw);
  auto quot = lattice::quotient(l);
  Int3 qbar = quot->coset_coords(q.c);
  return canonicalize_coset(std::move(quot), qbar);
}

// ---------------------------------------------------------------------------

std::vector<std::array<int, 3>> monomials(int e) {
  std::vector<std::array<int, 3>> out;
  for (int i = e; i >= 0; --i)
    for (int j = e - i; j >= 0; --j) out.push_back({i, j, e - i - j});
  return out;
}

lattice::IntLattice ideal_lattice(const HilbPoint& z, int e) {
  if (e < 1) throw MathError(ErrorKind::InvalidArgument, "degree must be at least 1");
  const auto target = monomials(e);
  std::map<std::array<int, 3>, std::size_t> index;
  for (std::size_t i = 0; i < target.size(); ++i) index[target[i]] = i;

  using Poly = std::vector<std::pair<std::array<int, 3>, Int>>;
  auto times_monomial = [&](const Poly& p, const std::array<int, 3>& m) {
    IntVec row(target.size());
    for (const auto& [exp, coef] : p) row[index.at({exp[0] + m[0], exp[1] + m[1], exp[2] + m[2]})] += coef;
    return row;
  };

  Poly ell;
  const Int3& abc = z.ell().coeffs();
  for (int i = 0; i < 3; ++i) ell.push_back({{i == 0, i == 1, i == 2}, abc[i]});
  Poly q;
  const IntVec lift = z.q_lift();
  const auto quad = monomials(2);
  for (std::size_t i = 0; i < 6; ++i) q.push_back({quad[i], lift[i]});

  std::vector<IntVec> gens;
  for (const auto& m : monomials(e - 1)) gens.push_back(times_monomial(ell, m));
  if (e >= 2)
    for (const auto& m : monomials(e - 2)) gens.push_back(times_monomial(q, m));
  IntMatrix basis = exactlin::saturate(IntMatrix::from_rows(gens));
  check_internal(basis.rows() == target.size() - 2, "ideal lattice has the wrong rank");
  return lattice::IntLattice::from_basis(basis);
}

// ---------------------------------------------------------------------------

HeightBound::HeightBound(double s, double t, double B) : s_(s), t_(t), b_(B) {
  if (!(t > 0) || !std::isfinite(s) || !std::isfinite(t) || !std::isfinite(B))
    throw MathError(ErrorKind::InvalidArgument, "height bound needs finite s and t > 0");
  for (long d = 1; d <= 12; ++d) {
    double sd = s * d, td = t * d;
    if (sd == std::round(sd) && td == std::round(td)) {
      denom_ = d;
      es_ = std::lround(sd - td);
      et_ = std::lround(td);
      break;
    }
  }
}

bool HeightBound::admits(const Int& n1, const Int& n2) const {
  if (b_ <= 0 || n2 <= 0) return false;
  if (denom_ == 0) {
    long double lhs = (s_ - t_) * std::log(static_cast<long double>(n1.get_d())) +
                      t_ * std::log(static_cast<long double>(n2.get_d()));
    return lhs <= 2.0L * std::log(static_cast<long double>(b_)) + 1e-12L;
  }
  // n1^es * n2^et <= B^(2d)
  Rat bq(b_);
  Rat rhs;
  mpz_pow_ui(rhs.get_num_mpz_t(), bq.get_num_mpz_t(), static_cast<unsigned long>(2 * denom_));
  mpz_pow_ui(rhs.get_den_mpz_t(), bq.get_den_mpz_t(), static_cast<unsigned long>(2 * denom_));
  Int lhs;
  mpz_pow_ui(lhs.get_mpz_t(), n2.get_mpz_t(), static_cast<unsigned long>(et_));
  Int p1;
  mpz_pow_ui(p1.get_mpz_t(), n1.get_mpz_t(), static_cast<unsigned long>(std::labs(es_)));
  if (es_ >= 0) return Rat(lhs * p1) <= rhs;
  return Rat(lhs) <= rhs * Rat(p1);
}

Int HeightBound::max_n2(const Int& n1) const {
  if (b_ <= 0) return 0;
  long double x = std::exp((2.0L * std::log(static_cast<long double>(b_)) -
                            (s_ - t_) * std::log(static_cast<long double>(n1.get_d()))) /
                           t_);
  Int n(static_cast<double>(std::floor(x)));
  if (n < 0) n = 0;
  if (n > 0 && !admits(n1, n)) {
    Int step = 1;
    while (n > 0 && !admits(n1, n)) {
      n -= step;
      step *= 2;
    }
    if (n < 0) n = 0;
  }
  // now admits(n) or n == 0: gallop up, then bisect
  Int step = 1;
  while (admits(n1, n + step)) {
    n += step;
    step *= 2;
  }
  Int lo = n, hi = n + step;  // admits(lo) or lo == 0; !admits(hi)
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (admits(n1, mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

long m_max(double s, double t, double B) {
  if (!(s > 0) || !(t > 0)) throw MathError(ErrorKind::InvalidArgument, "s and t must be positive");
  if (B < 1) return 0;
  // H_{s,t} >= M^s (sqrt(2/3)/7)^t for every point over a form of max entry M
  const long double c = std::sqrt(2.0L / 3.0L) / 7.0L;
  long double m = std::pow(static_cast<long double>(B) / std::pow(c, static_cast<long double>(t)), 1.0L / s);
  return static_cast<long>(std::floor(m * (1.0L + 1e-12L)));
}

std::vector<LinearForm> canonical_forms_slab(long m, long a) {
  std::vector<LinearForm> out;
  for (long b = -m; b <= m; ++b)
    for (long c = -m; c <= m; ++c) {
      if (a == 0 && (b < 0 || (b == 0 && c <= 0))) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      out.push_back(LinearForm::from_canonical({a, b, c}));
    }
  return out;
}

std::vector<LinearForm> canonical_forms(long m) {
  std::vector<LinearForm> out;
  for (long a = 0; a <= m; ++a) {
    auto slab = canonical_forms_slab(m, a);
    out.insert(out.end(), slab.begin(), slab.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t fiber_count_scaled(const lattice::QuotientLattice& q, const Int& n2_max) {
  if (n2_max < 1) return 0;
  return lattice::count_primitive_scaled(q, Rat(n2_max), false) / 2;
}

std::uint64_t fiber_count(const LinearForm& l, double Y) {
  if (!(Y > 0)) throw MathError(ErrorKind::InvalidArgument, "Y must be positive");
  auto q = lattice::quotient(l);
  Rat y(Y);
  return lattice::count_primitive_scaled(*q, y * y, false) / 2;
}

std::vector<Int3> fiber_points(const lattice::QuotientLattice& q, const Int& n2_max) {
  std::vector<Int3> out;
  if (n2_max < 1) return out;
  ellipsoid::for_each_point(ellipsoid::make_region(q.scaled_gram(), Rat(n2_max), false),
                            [&](const ellipsoid::Point& y) {
                              if (std::gcd(std::gcd(y[0], y[1]), y[2]) != 1) return;
                              Int3 v{y[0], y[1], y[2]};
                              if (exactlin::sign_canonical(v)) out.push_back(v);
                            });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HilbPoint> enumerate_points(double s, double t, double B) {
  if (!(s > 0) || !(t > 0)) throw MathError(ErrorKind::InvalidArgument, "s and t must be positive");
  std::vector<HilbPoint> out;
  const long mm = m_max(s, t, B);
  if (mm < 1) return out;
  HeightBound hb(s, t, B);

  {
    // the cutoff must leave nothing on the next shell
    LinearForm beyond = LinearForm::from_canonical({mm + 1, 1, 0});
    Int n2 = hb.max_n2(beyond.norm2());
    if (n2 >= 1) {
      auto q = lattice::quotient(beyond);
      check_internal(ellipsoid::count_points(ellipsoid::make_region(q->scaled_gram(), Rat(n2), false)) == 1,
                     "height cutoff on the linear form is not valid");
    }
  }

  for (long a = 0; a <= mm; ++a) {
    const auto forms = canonical_forms_slab(mm, a);
    std::vector<std::vector<HilbPoint>> per(forms.size());
    parallel::for_each_index(forms.size(), [&](std::size_t i) {
      Int n2 = hb.max_n2(forms[i].norm2());
      if (n2 < 1) return;
      auto q = lattice::quotient(forms[i]);
      for (const auto& v : fiber_points(*q, n2)) per[i].emplace_back(q, v);
    });
    for (auto& v : per) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  }
  return out;
}

}  // namespace hilb2::hilb
