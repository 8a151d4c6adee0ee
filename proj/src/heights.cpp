#include "hilb2/heights.hpp"

#include <algorithm>
#include <cmath>

#include "hilb2/errors.hpp"

namespace hilb2::heights {

using exactlin::dot;
using exactlin::IntMatrix;

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::Nonreduced: return "Nonreduced";
    case PointClass::Split: return "Split";
    case PointClass::Nonsplit: return "Nonsplit";
  }
  return "?";
}

Int evaluate_quadratic(std::span<const Int> q, const Int3& v) {
  return q[0] * v[0] * v[0] + q[1] * v[0] * v[1] + q[2] * v[0] * v[2] + q[3] * v[1] * v[1] + q[4] * v[1] * v[2] +
         q[5] * v[2] * v[2];
}

namespace {

Int3 add(const Int3& x, const Int3& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2]}; }
Int3 comb(const Int& s, const Int3& x, const Int& t, const Int3& y) {
  return {s * x[0] + t * y[0], s * x[1] + t * y[1], s * x[2] + t * y[2]};
}
Int3 canonical_primitive(const Int3& v) {
  IntVec p = exactlin::primitive_part(v);
  return {p[0], p[1], p[2]};
}
Int norm2(const Int3& v) { return dot(v, v); }
Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
// (p, q) with content 1 and first nonzero positive
std::pair<Int, Int> primitive_pair(const Int& p, const Int& q) {
  Int g = gcd(p, q);
  return {p / g, q / g};
}

}  // namespace

BinaryQuadraticForm restrict_form(std::span<const Int> q, const Int3& e, const Int3& f) {
  Int a = evaluate_quadratic(q, e);
  Int c = evaluate_quadratic(q, f);
  Int b = evaluate_quadratic(q, add(e, f)) - a - c;
  return {a, b, c};
}

BinaryQuadraticForm restrict_to_line(const HilbPoint& z) {
  auto kb = exactlin::kernel_basis(z.ell().coeffs());
  const IntVec q = z.q_lift();
  BinaryQuadraticForm f = restrict_form(q, kb.e, kb.f);
  Int3 coeffs{f.A, f.B, f.C};
  Int g = exactlin::content(coeffs);
  check_internal(g != 0, "quadratic form vanishes on the line");
  check_internal(g == 1, "restricted binary form is not primitive");
  if (!exactlin::sign_canonical(coeffs)) f = {-f.A, -f.B, -f.C};
  return f;
}

Int discriminant(const HilbPoint& z) { return restrict_to_line(z).disc(); }

PointClass classify_disc(const Int& disc) {
  if (disc == 0) return PointClass::Nonreduced;
  if (exactlin::is_perfect_square(disc)) return PointClass::Split;
  return PointClass::Nonsplit;
}

PointClass classify(const HilbPoint& z) { return classify_disc(discriminant(z)); }

// ---------------------------------------------------------------------------

SplitSolutions split_solutions(const HilbPoint& z) {
  auto kb = exactlin::kernel_basis(z.ell().coeffs());
  BinaryQuadraticForm F = restrict_to_line(z);
  const Int d = F.disc();
  if (classify_disc(d) != PointClass::Split) throw MathError(ErrorKind::WrongClass, "point is not split");
  Int s;
  mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
  Int3 v, w;
  if (F.A != 0) {
    auto [s1, t1] = primitive_pair(-F.B + s, 2 * F.A);
    auto [s2, t2] = primitive_pair(-F.B - s, 2 * F.A);
    v = comb(s1, kb.e, t1, kb.f);
    w = comb(s2, kb.e, t2, kb.f);
  } else {
    v = kb.e;
    auto [s2, t2] = primitive_pair(-F.C, F.B);
    w = comb(s2, kb.e, t2, kb.f);
  }
  v = canonical_primitive(v);
  w = canonical_primitive(w);
  if (v < w) std::swap(v, w);
  const IntVec q = z.q_lift();
  check_internal(evaluate_quadratic(q, v) == 0 && evaluate_quadratic(q, w) == 0, "split solution does not solve q");
  return {v, w};
}

Int disc_split_gcd(const SplitSolutions& sol) {
  Int g = exactlin::content(exactlin::cross(sol.v, sol.w));
  return g * g;
}

// ---------------------------------------------------------------------------

NonsplitParams nonsplit_params(const HilbPoint& z) {
  auto kb = exactlin::kernel_basis(z.ell().coeffs());
  BinaryQuadraticForm F = restrict_to_line(z);
  const Int D = F.disc();
  if (classify_disc(D) != PointClass::Nonsplit) throw MathError(ErrorKind::WrongClass, "point is not nonsplit");
  // root (-B + sqrt(D) : 2A), so v = (-B e0 + 2A f0) + sqrt(D) e0
  Int g = gcd(F.B, 2 * F.A);
  Int p = -F.B / g, q = 2 * F.A / g;
  Int a, b;
  exactlin::xgcd(p, q, a, b);  // a p + b q = 1
  Int y = a, x = -b;           // p y - q x = 1
  Int3 e = comb(p, kb.e, q, kb.f);
  Int3 f = comb(x, kb.e, y, kb.f);
  Int alpha = y, beta = -q;
  if (beta < 0) {
    beta = -beta;
    f = comb(-1, f, 0, f);
  }
  Int k = exactlin::floor_div(alpha, beta);
  alpha -= k * beta;
  f = comb(1, f, k, e);

  // reconstruction: q(r + sqrt(D) s) = 0 with r = g e, s = alpha e + beta f
  const IntVec ql = z.q_lift();
  Int3 r = comb(g, e, 0, e), s = comb(alpha, e, beta, f);
  const Int3& abc = z.ell().coeffs();
  Int qr = evaluate_quadratic(ql, r), qs = evaluate_quadratic(ql, s);
  Int bil = evaluate_quadratic(ql, add(r, s)) - qr - qs;
  check_internal(qr + D * qs == 0 && bil == 0, "nonsplit solution does not solve q");
  check_internal(dot(abc, e) == 0 && dot(abc, f) == 0, "nonsplit basis leaves the line");
  Int3 cr = exactlin::cross(e, f);
  check_internal(cr == abc || cr == Int3{-abc[0], -abc[1], -abc[2]}, "nonsplit basis is not unimodular");
  return {g, alpha, beta, D, e, f};
}

Int disc_nonsplit(const NonsplitParams& p) {
  Int3 parts{p.beta * p.beta * p.D, 2 * p.alpha * p.beta * p.D, p.g * p.g - p.alpha * p.alpha * p.D};
  Int c = exactlin::content(parts);
  check_internal(c != 0, "degenerate nonsplit parameters");
  Int num = 4 * p.beta * p.beta * p.g * p.g * p.D;
  check_internal(num % (c * c) == 0, "nonsplit discriminant is not integral");
  return num / (c * c);
}

Int ideal_norm(const NonsplitParams& p) {
  // generators times {1, sqrt(D)} on the basis {1, sqrt(D)}
  IntMatrix cols(2, 4);
  cols(0, 0) = p.g, cols(1, 0) = p.alpha;
  cols(0, 1) = p.alpha * p.D, cols(1, 1) = p.g;
  cols(0, 2) = 0, cols(1, 2) = p.beta;
  cols(0, 3) = p.beta * p.D, cols(1, 3) = 0;
  Int n = exactlin::smith_minor_gcd(cols, 2);
  check_internal(n == ideal_norm_closed_form(p), "ideal norm disagrees with closed form");
  return n;
}

Int ideal_norm_closed_form(const NonsplitParams& p) {
  std::array<Int, 4> v{p.beta * p.beta * p.D, p.alpha * p.beta * p.D, p.g * p.g - p.alpha * p.alpha * p.D,
                       p.beta * p.g};
  return exactlin::content(v);
}

FundamentalSplit fundamental_split(const Int& D) {
  if (D == 0 || exactlin::is_perfect_square(D)) throw MathError(ErrorKind::InvalidArgument, "square discriminant");
  Int rest = abs(D), square = 1, free = 1;
  auto strip = [&](const Int& p) {
    int e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2) free *= p;
  };
  if (rest.fits_ulong_p()) {
    unsigned long r = rest.get_ui();
    for (unsigned long p = 2; p * p <= r; ++p) {
      if (r % p) continue;
      int e = 0;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      for (int i = 0; i < e / 2; ++i) square *= p;
      if (e % 2) free *= p;
    }
    rest = r;
  } else {
    for (Int p = 2; p * p <= rest; ++p) strip(p);
  }
  free *= rest;
  if (D < 0) free = -free;
  // D = square^2 * free, free squarefree
  Int m4 = ((free % 4) + 4) % 4;
  if (m4 == 1) return {free, square};
  check_internal(square % 2 == 0, "discriminant not congruent to 0 or 1 mod 4");
  return {4 * free, square / 2};
}

Int maximal_order_norm(const NonsplitParams& p) {
  auto [dk, f] = fundamental_split(p.D);
  // O = Z[w], w = (dk + sqrt(dk)) / 2, w^2 = dk w - (dk^2 - dk) / 4
  const Int tr = dk, nm = (dk * dk - dk) / 4;
  auto embed = [&](const Int& x, const Int& y) {  // x + y sqrt(D)
    return std::pair<Int, Int>{x - y * f * dk, 2 * y * f};
  };
  auto times_w = [&](const std::pair<Int, Int>& z) {
    return std::pair<Int, Int>{-z.second * nm, z.first + z.second * tr};
  };
  std::array<std::pair<Int, Int>, 2> gens{embed(p.g, p.alpha), embed(0, p.beta)};
  IntMatrix cols(2, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    auto w = times_w(gens[i]);
    cols(0, 2 * i) = gens[i].first, cols(1, 2 * i) = gens[i].second;
    cols(0, 2 * i + 1) = w.first, cols(1, 2 * i + 1) = w.second;
  }
  return exactlin::smith_minor_gcd(cols, 2);
}

// ---------------------------------------------------------------------------

double CovolumeValue::value() const { return std::sqrt(covol2.get_d()); }

CovolumeValue height_e(const HilbPoint& z, int e) {
  if (e < 1) throw MathError(ErrorKind::InvalidArgument, "degree must be at least 1");
  if (e == 1) return {z.covol2_I1()};
  if (e == 2) return {z.covol2_I2()};
  return {hilb::ideal_lattice(z, e).covol2};
}

double height_st(const HilbPoint& z, double s, double t) {
  long double n1 = z.covol2_I1().get_d(), n2 = z.covol2_I2().get_d();
  return static_cast<double>(std::pow(n1, (s - t) / 2.0L) * std::pow(n2, t / 2.0L));
}

std::optional<Rat> height_st_exact(const HilbPoint& z, double s, double t) {
  const double u = s - t;
  if (u != std::round(u) || t != std::round(t) || std::abs(u) > 64 || std::abs(t) > 64) return std::nullopt;
  auto power = [](const Int& base, long e) {
    Rat r = 1;
    Int b;
    mpz_pow_ui(b.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
    r = e >= 0 ? Rat(b) : Rat(1) / Rat(b);
    return r;
  };
  Rat sq = power(z.covol2_I1(), std::lround(u)) * power(z.covol2_I2(), std::lround(t));
  if (!exactlin::is_perfect_square(sq.get_num()) || !exactlin::is_perfect_square(sq.get_den())) return std::nullopt;
  Int n, d;
  mpz_sqrt(n.get_mpz_t(), sq.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), sq.get_den_mpz_t());
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------

Rat le_height_squared(const HilbPoint& z) {
  BinaryQuadraticForm F = restrict_to_line(z);
  const Int D = F.disc();
  switch (classify_disc(D)) {
    case PointClass::Nonreduced: {
      auto kb = exactlin::kernel_basis(z.ell().coeffs());
      Int3 v;
      if (F.A != 0) {
        auto [s, t] = primitive_pair(-F.B, 2 * F.A);
        v = comb(s, kb.e, t, kb.f);
      } else {
        v = kb.e;
      }
      check_internal(evaluate_quadratic(z.q_lift(), v) == 0, "double point does not solve q");
      Int n = norm2(v);
      return Rat(n * n);
    }
    case PointClass::Split: {
      auto sol = split_solutions(z);
      return Rat(norm2(sol.v) * norm2(sol.w));
    }
    case PointClass::Nonsplit: {
      auto p = nonsplit_params(z);
      Int3 r = comb(p.g, p.e, 0, p.e), s = comb(p.alpha, p.e, p.beta, p.f);
      Int rr = norm2(r), ss = norm2(s), rs = dot(r, s);
      Int prod;
      if (D > 0) {
        Int sum = rr + D * ss;
        prod = sum * sum - 4 * D * rs * rs;
      } else {
        Int sum = rr - D * ss;
        prod = sum * sum;
      }
      Int n = maximal_order_norm(p);
      Rat out(prod, n * n);
      out.canonicalize();
      return out;
    }
  }
  return 0;
}

Rat le_height_squared_closed_form(const HilbPoint& z) {
  auto kb = exactlin::kernel_basis(z.ell().coeffs());
  BinaryQuadraticForm F = restrict_to_line(z);
  const Int g11 = norm2(kb.e), g12 = dot(kb.e, kb.f), g22 = norm2(kb.f);
  Int t = g22 * F.A - g12 * F.B + g11 * F.C;
  Int D = F.disc();
  Int out = t * t + (D > 0 ? Int(z.covol2_I1() * D) : Int(0));
  return Rat(out);
}

double le_height(const HilbPoint& z) { return std::sqrt(le_height_squared(z).get_d()); }

Rat disc_ratio(const HilbPoint& z) {
  Int d = abs(discriminant(z));
  Int n1 = z.covol2_I1();
  Rat r(d * n1 * n1, z.covol2_I2());
  r.canonicalize();
  return r;
}

}  // namespace hilb2::heights
