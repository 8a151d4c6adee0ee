#include <random>

#include "doctest.h"
#include "hilb2/errors.hpp"
#include "hilb2/exactlin.hpp"

using namespace hilb2;
using namespace hilb2::exactlin;

namespace {

IntMatrix ell_times_linears(long a, long b, long c) {
  // X0 l, X1 l, X2 l on X0^2, X0X1, X0X2, X1^2, X1X2, X2^2
  return {{a, b, c, 0, 0, 0}, {0, a, 0, b, c, 0}, {0, 0, a, 0, b, c}};
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), coef(-3, 3);
  for (int step = 0; step < 12; ++step) {
    std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    Int k = coef(rng);
    for (std::size_t c = 0; c < n; ++c) u(i, c) += k * u(j, c);
    if (step % 3 == 0) u.swap_rows(i, j);
  }
  return u;
}

}  // namespace

TEST_CASE("gram_det2 basics") {
  CHECK(gram_det2(IntMatrix{{1, 0, 0}, {0, 1, 0}}) == 1);
  CHECK(gram_det2(IntMatrix{{3, 4}}) == 25);
  CHECK(gram_det2(ell_times_linears(1, 1, 1)) == 20);
  CHECK(gram_det2(ell_times_linears(1, 2, 3)) == 2130);
}

TEST_CASE("gram_det2 is invariant under unimodular row operations") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m(3, 5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 5; ++j) m(i, j) = coef(rng);
    if (gram_det2(m) == 0) continue;
    CHECK(gram_det2(random_unimodular(rng, 3) * m) == gram_det2(m));
  }
}

TEST_CASE("determinant and hermite form") {
  CHECK(determinant(IntMatrix{{2, 1}, {1, 3}}) == 5);
  CHECK(determinant(IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}) == -1);
  IntMatrix m{{4, 6, 2}, {2, 3, 7}};
  auto hf = hermite_rows(m, true);
  CHECK(hf.rank == 2);
  CHECK(hf.u * m == hf.h);
  CHECK(hf.u * hf.u_inv == IntMatrix::identity(2));
  for (std::size_t i = 0; i < hf.rank; ++i) CHECK(hf.h(i, hf.pivots[i]) > 0);
}

TEST_CASE("saturate") {
  CHECK(saturate(IntMatrix{{2, 0}}) == IntMatrix{{1, 0}});
  CHECK(saturate(IntMatrix{{1, 0, 0}, {0, 1, 0}}) == IntMatrix{{1, 0, 0}, {0, 1, 0}});
  IntMatrix g{{2, 4, 0}, {0, 0, 6}};
  auto s = saturate(g);
  CHECK(saturate(s) == s);
  CHECK(s.rows() == 2);
  CHECK(s == IntMatrix{{1, 2, 0}, {0, 0, 1}});
}

TEST_CASE("saturation of l S(2) + q S(1) in degree 3 has rank 8") {
  // l = X2, q = X0^2; cubic monomials in lexicographic order
  const std::array<std::array<int, 3>, 10> mons{{{3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
                                                  {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}}};
  auto index = [&](std::array<int, 3> e) {
    for (std::size_t i = 0; i < mons.size(); ++i)
      if (mons[i] == e) return i;
    return mons.size();
  };
  IntMatrix gens(0, 10);
  const std::array<std::array<int, 3>, 6> quad{{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}};
  for (auto e : quad) {
    IntVec row(10, 0);
    row[index({e[0], e[1], e[2] + 1})] = 1;
    gens.append_row(row);
  }
  for (int k = 0; k < 3; ++k) {
    IntVec row(10, 0);
    std::array<int, 3> e{2, 0, 0};
    e[k] += 1;
    row[index(e)] = 1;
    gens.append_row(row);
  }
  CHECK(saturate(gens).rows() == 8);
}

TEST_CASE("kernel_basis") {
  auto kb = kernel_basis({0, 0, 1});
  CHECK(kb.e == Int3{1, 0, 0});
  CHECK(kb.f == Int3{0, 1, 0});
  for (Int3 l : {Int3{1, 1, 1}, Int3{2, 1, 0}, Int3{3, -5, 7}, Int3{0, 4, 9}}) {
    auto k = kernel_basis(l);
    CHECK(dot(k.e, l) == 0);
    CHECK(dot(k.f, l) == 0);
    Int3 x = cross(k.e, k.f);
    CHECK(((x == l) || (x == Int3{-l[0], -l[1], -l[2]})));
  }
}

TEST_CASE("smith_minor_gcd") {
  CHECK(smith_minor_gcd(IntMatrix{{1, 0}, {0, 1}}, 2) == 1);
  CHECK(smith_minor_gcd(IntMatrix{{2, 0}, {0, 2}}, 2) == 4);
  // (2, sqrt 8) in Z[sqrt 8] on the basis {1, sqrt 8}: generators 2, 2 sqrt 8, sqrt 8, 8
  CHECK(smith_minor_gcd(IntMatrix{{2, 0, 0, 8}, {0, 2, 1, 0}}, 2) == 2);
  CHECK_THROWS_AS(smith_minor_gcd(IntMatrix{{1, 2}, {2, 4}}, 2), MathError);
}

TEST_CASE("integer helpers") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(ceil_div(-7, 2) == -3);
  CHECK(floor_div(7, 2) == 3);
  CHECK(round_nearest(Rat(5, 2)) == 3);
  CHECK(round_nearest(Rat(-5, 2)) == -2);
  CHECK(is_perfect_square(Int(49)));
  CHECK_FALSE(is_perfect_square(Int(50)));
  CHECK_FALSE(is_perfect_square(Int(-4)));
  Int x, y;
  Int g = xgcd(240, 46, x, y);
  CHECK(g == 2);
  CHECK(x * 240 + y * 46 == 2);
  IntVec v{-4, 6, 0};
  CHECK(content(v) == 2);
  CHECK(primitive_part(v) == IntVec{2, -3, 0});
  CHECK(sign_canonical(IntVec{0, 1, -1}));
  CHECK_FALSE(sign_canonical(IntVec{0, -1, 1}));
}

TEST_CASE("integer_kernel") {
  IntMatrix m{{1, 2, 3}};
  auto k = integer_kernel(m);
  CHECK(k.rows() == 2);
  for (std::size_t i = 0; i < k.rows(); ++i) CHECK(dot(k.row(i), m.row(0)) == 0);
  CHECK(saturate(k) == hnf_basis(k));
}

TEST_CASE("lll_gram reduces and preserves the determinant") {
  IntMatrix basis{{1, 0, 0}, {1000, 1, 0}, {3000, 17, 1}};
  IntMatrix gram = basis * basis.transpose();
  auto r = lll_gram(gram);
  CHECK(determinant(r.transform) * determinant(r.transform) == 1);
  CHECK(r.transform * gram * r.transform.transpose() == r.gram);
  CHECK(determinant(r.gram) == 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.gram(i, i) == 1);
}

TEST_CASE("rational gram") {
  RationalGram g(2);
  g(0, 0) = Rat(1, 2);
  g(1, 1) = Rat(1, 3);
  g(0, 1) = g(1, 0) = Rat(1, 6);
  CHECK(g.is_symmetric());
  CHECK(g.is_positive_definite());
  CHECK(g.determinant() == Rat(1, 6) - Rat(1, 36));
  CHECK(g.evaluate(IntVec{1, 1}) == Rat(1, 2) + Rat(1, 3) + Rat(1, 3));
}
