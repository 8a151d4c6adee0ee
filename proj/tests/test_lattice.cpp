#include <cmath>
#include <random>

#include "doctest.h"
#include "hilb2/constants.hpp"
#include "hilb2/lattice.hpp"
#include "hilb2/oracle.hpp"

using namespace hilb2;
using namespace hilb2::lattice;
using exactlin::IntMatrix;
using constants::kPrimitiveBallDensity;

namespace {

LinearForm L(long a, long b, long c) { return LinearForm::normalize({a, b, c}); }

}  // namespace

TEST_CASE("linear form normalization") {
  auto l = L(-2, 4, 6);
  CHECK(l.coeffs() == Int3{1, -2, -3});
  CHECK(l.norm2() == 14);
  CHECK(l.height_max() == 3);
  CHECK_THROWS(L(0, 0, 0));
}

TEST_CASE("product lattice covolume matches the sextic") {
  CHECK(product_covol2_formula(L(1, 0, 0)) == 1);
  CHECK(product_covol2_formula(L(1, 1, 1)) == 20);
  CHECK(product_covol2_formula(L(1, 2, 3)) == 2130);
  CHECK(product_covol2_formula(L(2, 1, 0)) == 105);
  CHECK(product_covol2_formula(L(3, -2, 5)) == 42954);
  for (auto l : {L(1, 0, 0), L(1, 1, 1), L(1, 2, 3), L(7, -3, 2)}) {
    CHECK(exactlin::gram_det2(product_basis(l)) == product_covol2_formula(l));
    const Int n = l.norm2();
    const Int p = product_covol2_formula(l);
    CHECK(3 * p >= 2 * n * n * n);
    CHECK(p <= n * n * n);
    CHECK(saturate(product_basis(l)) == exactlin::hnf_basis(product_basis(l)));
  }
}

TEST_CASE("quotient lattice invariants") {
  auto q0 = QuotientLattice(L(1, 0, 0));
  CHECK(q0.covol2() == 1);
  auto g0 = q0.gram();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(g0(i, j) == Rat(i == j ? 1 : 0));

  auto q1 = QuotientLattice(L(1, 1, 1));
  CHECK(q1.covol2() == Rat(1, 20));

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    Int3 raw{coef(rng), coef(rng), coef(rng)};
    if (raw == Int3{0, 0, 0}) continue;
    auto l = LinearForm::normalize(raw);
    QuotientLattice q(l);
    CHECK(q.gram().determinant() * Rat(q.product_covol2()) == 1);
    CHECK(exactlin::determinant(q.scaled_gram()) == q.product_covol2() * q.product_covol2());
    for (Int3 y : {Int3{1, 0, 0}, Int3{0, 1, 0}, Int3{2, -1, 3}}) {
      auto v = q.lift(y);
      CHECK(q.coset_coords(v) == y);
      // projection norm equals distance to the span of S(1).l
      CHECK(q.norm2(y) == dist_to_V(v, l));
    }
    for (std::size_t i = 0; i < 3; ++i) CHECK(q.coset_coords(product_basis(l).row(i)) == Int3{0, 0, 0});
  }
}

TEST_CASE("dist_to_V") {
  CHECK(dist_to_V(IntVec{0, 0, 0, 1, 0, 0}, L(1, 0, 0)) == 1);
  CHECK(dist_to_V(IntVec{-3, 0, 0, 1, 0, 0}, L(2, 1, 0)) <= Rat(1, 4));
  CHECK(dist_to_V(IntVec{2, 1, 0, 0, 0, 0}, L(2, 1, 0)) == 0);
}

TEST_CASE("successive minima") {
  auto m0 = successive_minima(QuotientLattice(L(1, 0, 0)));
  CHECK(m0.l1sq == 1);
  CHECK(m0.l2sq == 1);
  CHECK(m0.l3sq == 1);
  auto q = QuotientLattice(L(2, 1, 0));
  auto m = successive_minima(q);
  CHECK(m.l1sq <= Rat(1, 4));
  CHECK(m.l1sq >= Rat(1, 784));
  CHECK(m.l1sq <= m.l2sq);
  CHECK(m.l2sq <= m.l3sq);
  CHECK(m.l3sq <= 1);
  CHECK(q.norm2(m.witnesses[0]) == m.l1sq);
  CHECK(q.norm2(m.witnesses[2]) == m.l3sq);
}

TEST_CASE("primitive counts") {
  auto q0 = QuotientLattice(L(1, 0, 0));
  CHECK(count_primitive(q0, 1.5) == 18);
  CHECK(count_primitive(q0, 10) == 3458);
  CHECK(count_primitive_columns(q0, 10) == 3458);
  CHECK(count_primitive(q0, 1.0) == 0);  // strict at the first minimum
  CHECK(count_primitive_scaled(q0, 1, false) == 6);
  CHECK(count_primitive_scaled(q0, 2, true) == 6);
  CHECK(count_primitive_scaled(q0, 2, false) == 18);
  CHECK(count_primitive(QuotientLattice(L(1, 1, 1)), 2) == 122);

  const double main = gon_main_term(q0, 10);
  CHECK(main == doctest::Approx(3484.68545355565).epsilon(1e-12));
  const double err = std::abs(3458.0 - main);
  CHECK(err <= gon_error_shape(q0, successive_minima(q0), 10));
}

TEST_CASE("primitive count agrees with a box scan") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coef(-6, 6);
  std::uniform_real_distribution<double> radius(0.5, 3.0);
  int done = 0;
  while (done < 200) {
    Int3 raw{coef(rng), coef(rng), coef(rng)};
    if (raw == Int3{0, 0, 0}) continue;
    QuotientLattice q(LinearForm::normalize(raw));
    const double R = radius(rng);
    const Rat T = Rat(R) * Rat(R) * Rat(q.product_covol2());
    CHECK(count_primitive_scaled(q, T, true) == oracle::naive_count_primitive(q.scaled_gram(), T, true));
    CHECK(count_primitive_scaled_columns(q, T, false) == oracle::naive_count_primitive(q.scaled_gram(), T, false));
    ++done;
  }
}

TEST_CASE("gon main term scaling") {
  CHECK(kPrimitiveBallDensity == doctest::Approx(3.48468545355565).epsilon(1e-12));
  auto q1 = QuotientLattice(L(1, 1, 1));
  // covol = 1/sqrt(20)
  CHECK(gon_main_term(q1, 2) == doctest::Approx(kPrimitiveBallDensity * 8 * std::sqrt(20.0)));
}

TEST_CASE("mobius") {
  auto mu = mobius_table(12);
  CHECK(mu[1] == 1);
  CHECK(mu[2] == -1);
  CHECK(mu[4] == 0);
  CHECK(mu[6] == 1);
  CHECK(mu[5] == -1);
  CHECK(mu[12] == 0);
}
