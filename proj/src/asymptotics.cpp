#include "hilb2/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hilb2/constants.hpp"
#include "hilb2/errors.hpp"
#include "hilb2/parallel.hpp"

namespace hilb2::asymptotics {

using hilb::LinearForm;

namespace {

constexpr long double kHalfDensity = constants::kPi / (3.0L * constants::kZeta3);

// Sum over one shell max(|a|,|b|,|c|) = m of n1^(3/2 - 3r/2) / P, both signs.
// Sign patterns are folded into a weight; order within the shell is fixed.
long double shell_sum(long m, long double ratio) {
  const long double expo = 1.5L - 1.5L * ratio;
  long double sum = 0;
  for (long a = 0; a <= m; ++a)
    for (long b = 0; b <= m; ++b)
      for (long c = 0; c <= m; ++c) {
        if (std::max({a, b, c}) != m) continue;
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        const long double a2 = a * a, b2 = b * b, c2 = c * c;
        const long double p = a2 * a2 * a2 + 2 * b2 * a2 * a2 + 2 * c2 * a2 * a2 + 2 * b2 * b2 * a2 +
                              5 * c2 * b2 * a2 + 2 * c2 * c2 * a2 + b2 * b2 * b2 + 2 * c2 * b2 * b2 +
                              2 * c2 * c2 * b2 + c2 * c2 * c2;
        const int weight = (a ? 2 : 1) * (b ? 2 : 1) * (c ? 2 : 1);
        sum += weight * std::pow(a2 + b2 + c2, expo) / p;
      }
  return sum;
}

// Points can only exist over l when n2_max reaches P * lambda1^2 >= P / (49 M^4).
bool fiber_may_be_nonempty(const LinearForm& l, const Int& n2_max) {
  if (n2_max < 1) return false;
  Int m = l.height_max();
  Int m2 = m * m;
  return 49 * m2 * m2 * n2_max >= lattice::product_covol2_formula(l);
}

template <bool Parallel>
std::uint64_t count_impl(const CountQuery& q) {
  if (!(q.s > 0) || !(q.t > 0)) throw MathError(ErrorKind::InvalidArgument, "s and t must be positive");
  const long mm = hilb::m_max(q.s, q.t, q.B);
  if (mm < 1) return 0;
  hilb::HeightBound hb(q.s, q.t, q.B);
  std::uint64_t total = 0;
  // one slab of forms at a time keeps memory flat for large cutoffs
  for (long a = 0; a <= mm; ++a) {
    const auto forms = hilb::canonical_forms_slab(mm, a);
    std::vector<std::uint64_t> per(forms.size(), 0);
    auto body = [&](std::size_t i) {
      Int n2 = hb.max_n2(forms[i].norm2());
      if (!fiber_may_be_nonempty(forms[i], n2)) return;
      lattice::QuotientLattice quot(forms[i]);
      per[i] = hilb::fiber_count_scaled(quot, n2);
    };
    if constexpr (Parallel)
      parallel::for_each_index(forms.size(), body);
    else
      parallel::for_each_index_serial(forms.size(), body);
    total = std::accumulate(per.begin(), per.end(), total);
  }
  return total;
}

}  // namespace

ConstantEstimate constant_c(double ratio, long M_max) {
  if (!(ratio > 0)) throw MathError(ErrorKind::InvalidArgument, "ratio must be positive");
  if (M_max < 1) throw MathError(ErrorKind::InvalidArgument, "M_max must be at least 1");
  std::vector<long double> shells(static_cast<std::size_t>(M_max), 0);
  parallel::for_each_index(shells.size(), [&](std::size_t i) {
    shells[i] = shell_sum(static_cast<long>(i) + 1, ratio);
  });
  long double total = 0;
  for (long double s : shells) total += s;
  ConstantEstimate est;
  est.ratio = ratio;
  est.M_max = M_max;
  est.partial = static_cast<double>(kHalfDensity * total);
  // term <= (3/2) M^(-3-3r) on shell M, at most 26 M^2 triples per shell,
  // and sum_{M > K} M^(-1-3r) <= K^(-3r) / (3r)
  est.tail_bound = static_cast<double>(kHalfDensity * 13.0L * std::pow(static_cast<long double>(M_max), -3.0L * ratio) /
                                       ratio);
  return est;
}

std::uint64_t count_Nst(const CountQuery& q) { return count_impl<true>(q); }
std::uint64_t count_Nst_serial(const CountQuery& q) { return count_impl<false>(q); }

Report convergence_report(double s, double t, const std::vector<double>& Bs, long constant_M) {
  if (!(s > 0) || !(t > 0)) throw MathError(ErrorKind::InvalidArgument, "s and t must be positive");
  Report rep;
  rep.s = s;
  rep.t = t;
  rep.constant_M = constant_M;
  rep.upper_bound_regime = !(s / t > 1);
  ConstantEstimate c = constant_c(s / t, constant_M);
  for (double B : Bs) {
    ReportRow row;
    row.B = B;
    row.N = count_Nst({s, t, B});
    row.c_low = c.low();
    row.c_high = c.high();
    const double mid = 0.5 * (c.low() + c.high());
    row.prediction = mid * std::pow(B, 3.0 / t);
    row.rel_dev = std::abs(static_cast<double>(row.N) / row.prediction - 1.0);
    row.envelope = std::pow(B, 2.0 / t) + std::pow(B, 3.0 / s) * std::log(std::max(B, std::exp(1.0)));
    rep.rows.push_back(row);
  }
  return rep;
}

std::pair<double, long> bm_exponents(double s, double t) {
  if (!(s > 0) || !(t > 0)) throw MathError(ErrorKind::InvalidArgument, "s and t must be positive");
  return {3.0 / t, 0};
}

// ---------------------------------------------------------------------------

namespace {

Int cube_root_bound(double B) {
  // largest x with x^3 <= B^2
  Rat b(B);
  Rat b2 = b * b;
  Int x(static_cast<double>(std::floor(std::cbrt(static_cast<long double>(B) * B))));
  auto ok = [&](const Int& v) { return Rat(v * v * v) <= b2; };
  while (x > 0 && !ok(x)) --x;
  while (ok(x + 1)) ++x;
  return x;
}

}  // namespace

LeCount le_count(double B) {
  LeCount out;
  if (!(B >= 1)) return out;
  const Int X = cube_root_bound(B);
  out.bound_sq = X;
  // |Disc| n1 <= H_Le^2, so n1 <= X
  const long m = static_cast<long>(std::floor(std::sqrt(X.get_d()))) + 1;
  std::vector<LinearForm> forms;
  for (const auto& l : hilb::canonical_forms(m))
    if (l.norm2() <= X) forms.push_back(l);

  std::vector<std::array<std::uint64_t, 2>> per(forms.size(), {0, 0});
  parallel::for_each_index(forms.size(), [&](std::size_t i) {
    const auto& l = forms[i];
    const Int n1 = l.norm2();
    auto kb = exactlin::kernel_basis(l.coeffs());
    const Int g11 = exactlin::dot(kb.e, kb.e), g12 = exactlin::dot(kb.e, kb.f), g22 = exactlin::dot(kb.f, kb.f);
    const Int3 t{g22, -g12, g11};
    // 2 T^2 + n1 (B^2 - 4AC) <= 2 X, with T = t . (A, B, C)
    exactlin::IntMatrix psi(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) psi(r, c) = 2 * t[r] * t[c];
    psi(1, 1) += n1;
    psi(0, 2) -= 2 * n1;
    psi(2, 0) -= 2 * n1;
    ellipsoid::for_each_point(ellipsoid::make_region(psi, Rat(2 * X), false), [&](const ellipsoid::Point& y) {
      if (std::gcd(std::gcd(y[0], y[1]), y[2]) != 1) return;
      Int3 f{y[0], y[1], y[2]};
      if (!exactlin::sign_canonical(f)) return;
      Int d = f[1] * f[1] - 4 * f[0] * f[2];
      if (d == 0) return;
      Int tt = exactlin::dot(t, f);
      Int h2 = tt * tt + (d > 0 ? Int(n1 * d) : Int(0));
      if (h2 > X) return;
      if (exactlin::is_perfect_square(d))
        ++per[i][0];
      else
        ++per[i][1];
    });
  });
  for (const auto& p : per) {
    out.split += p[0];
    out.nonsplit += p[1];
  }
  out.total = out.split + out.nonsplit;
  return out;
}

std::uint64_t le_split_pairs(const Int& bound_sq) {
  const long X = bound_sq.get_si();
  if (X < 1) return 0;
  std::vector<std::uint64_t> c(static_cast<std::size_t>(X) + 1, 0);
  const long r = static_cast<long>(std::sqrt(static_cast<double>(X))) + 1;
  for (long a = -r; a <= r; ++a)
    for (long b = -r; b <= r; ++b)
      for (long cc = -r; cc <= r; ++cc) {
        long n = a * a + b * b + cc * cc;
        if (n == 0 || n > X || std::gcd(std::gcd(a, b), cc) != 1) continue;
        ++c[static_cast<std::size_t>(n)];
      }
  for (auto& v : c) v /= 2;  // projective points
  std::uint64_t pairs = 0;
  for (long n = 1; n <= X; ++n)
    for (long k = n; n * k <= X; ++k) {
      if (k == n)
        pairs += c[n] * (c[n] - (c[n] ? 1 : 0)) / 2;
      else
        pairs += c[n] * c[k];
    }
  return pairs;
}

double le_prediction(double B) { return static_cast<double>(constants::kLeRudulierConstant) * B * std::log(B); }

}  // namespace hilb2::asymptotics
