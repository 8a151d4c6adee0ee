#include <cmath>

#include "doctest.h"
#include "hilb2/asymptotics.hpp"
#include "hilb2/constants.hpp"
#include "hilb2/hilb.hpp"

using namespace hilb2;
using namespace hilb2::asymptotics;

TEST_CASE("leading constant") {
  auto c1 = constant_c(2, 1);
  CHECK(c1.partial == doctest::Approx(5.91010216178).epsilon(1e-11));
  // axis, face-diagonal and space-diagonal terms
  const double direct =
      constants::kPi / (3 * constants::kZeta3) * (6 + 12 * std::pow(2.0, -1.5) / 6 + 8 * std::pow(3.0, -1.5) / 20);
  CHECK(c1.partial == doctest::Approx(direct).epsilon(1e-14));
  auto c10 = constant_c(2, 10), c20 = constant_c(2, 20);
  CHECK(c10.partial == doctest::Approx(5.94003694653).epsilon(1e-11));
  CHECK(constant_c(3, 5).partial == doctest::Approx(5.45999665171).epsilon(1e-11));
  CHECK(c10.partial <= c20.partial);
  CHECK(c20.partial <= c10.high());
  CHECK(c20.high() <= c10.high());
  double prev = 0;
  for (long M = 1; M <= 12; ++M) {
    auto c = constant_c(2, M);
    CHECK(c.partial >= prev);
    CHECK(c20.partial <= c.high());
    prev = c.partial;
  }
}

TEST_CASE("point counts") {
  CHECK(count_Nst({2, 1, 0.99}) == 0);
  CHECK(count_Nst({2, 1, 1}) == 9);
  CHECK(count_Nst({2, 1, 2}) == 45);
  CHECK(count_Nst({2, 1, 5}) == 729);
  CHECK(count_Nst({3, 1, 5}) == 645);
  CHECK(count_Nst({3, 2, 5}) == 87);
  CHECK(count_Nst({4, 2, 25}) == 729);
  CHECK(count_Nst({6, 3, 125}) == 729);
  CHECK(count_Nst({2, 1, 10}) == 5881);
  CHECK(count_Nst({2, 1, 10}) == count_Nst_serial({2, 1, 10}));
  CHECK(count_Nst({3, 2, 20}) == count_Nst_serial({3, 2, 20}));
}

TEST_CASE("count is the sum of fibers") {
  for (double B : {5.0, 12.0}) {
    std::uint64_t sum = 0;
    const Int bound = Int(static_cast<long>(B * B));
    for (const auto& l : hilb::canonical_forms(hilb::m_max(2, 1, B))) {
      const Int n2 = bound / l.norm2();
      if (n2 == 0) continue;
      sum += hilb::fiber_count_scaled(lattice::QuotientLattice(l), n2);
    }
    CHECK(sum == count_Nst({2, 1, B}));
  }
}

TEST_CASE("convergence report") {
  auto rep = convergence_report(2, 1, {5, 10}, 50);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].N == 729);
  CHECK(rep.rows[1].N == 5881);
  CHECK_FALSE(rep.upper_bound_regime);
  const auto& r = rep.rows[1];
  CHECK(r.c_low <= r.c_high);
  CHECK(r.prediction == doctest::Approx((r.c_low + r.c_high) / 2 * 1000));
  CHECK(r.rel_dev == doctest::Approx(std::abs(5881.0 / r.prediction - 1)));
  CHECK(convergence_report(1, 1, {3}, 10).upper_bound_regime);
  CHECK(convergence_report(1, 2, {1}, 10).upper_bound_regime);
}

TEST_CASE("exponents") {
  CHECK(bm_exponents(2, 1) == std::pair<double, long>{3, 0});
  CHECK(bm_exponents(4, 2) == std::pair<double, long>{1.5, 0});
  CHECK(bm_exponents(3, 1) == std::pair<double, long>{3, 0});
}

TEST_CASE("Le Rudulier counts") {
  auto c1 = le_count(1);
  CHECK(c1.total == 3);
  CHECK(c1.split == 3);
  CHECK(c1.nonsplit == 0);
  for (double B : {5.0, 10.0, 30.0}) {
    auto c = le_count(B);
    CHECK(c.split == le_split_pairs(c.bound_sq));
    CHECK(c.total == c.split + c.nonsplit);
  }
  CHECK(le_count(10).total == 57);
  CHECK(le_count(30).total == 271);
  CHECK(le_prediction(10) == doctest::Approx(constants::kLeRudulierConstant * 10 * std::log(10.0)));
  CHECK(constants::kLeRudulierConstant == doctest::Approx(15.626).epsilon(1e-4));
}
