#include <doctest.h>

#include <cmath>

#include "dof/closed_form.hpp"

using namespace dof;

namespace {

Rational cf(ChainSide side, int k, int n) {
  const auto t = cf_value<Rational>(side, k, n);
  REQUIRE(t.is_finite());
  return t.value;
}

TwoCellClassConfig cls(int m1, int n1, int k1, int m2, int n2, int k2) { return {{m1, m2}, {n1, n2}, {k1, k2}}; }

}  // namespace

TEST_CASE("continued fractions, k = 5") {
  CHECK(cf_value<Rational>(ChainSide::kA, 5, 0).kind == CfKind::kInfinity);
  CHECK(cf(ChainSide::kA, 5, 1) == 5);
  CHECK(cf(ChainSide::kA, 5, 2) == 4);
  CHECK(cf(ChainSide::kA, 5, 3) == make_rational(15, 4));  // 5 - 5/4
  CHECK(cf(ChainSide::kA, 5, 4) == make_rational(11, 3));  // 5 - 4/3
  CHECK(cf(ChainSide::kB, 5, 0) == 0);
  CHECK(cf(ChainSide::kB, 5, 1) == 1);
  CHECK(cf(ChainSide::kB, 5, 2) == make_rational(5, 4));
  CHECK(cf(ChainSide::kB, 5, 3) == make_rational(4, 3));   // 5 / (15/4)
  CHECK(cf(ChainSide::kB, 5, 4) == make_rational(15, 11));  // 5 / (11/3)
  const auto a = cf_value<double>(ChainSide::kA, 5, 60);
  CHECK(std::abs(a.value - (5 + std::sqrt(5.0)) / 2) < 1e-9);
  const auto b = cf_value<double>(ChainSide::kB, 5, 60);
  CHECK(std::abs(b.value - (5 - std::sqrt(5.0)) / 2) < 1e-9);
}

TEST_CASE("continued fractions end for k <= 3") {
  // k = 3: inf, 3, 2, 3/2, 1, 0, end.
  const auto a = cf_sequence<Rational>(ChainSide::kA, 3, 10);
  REQUIRE(a.size() == 7);
  CHECK(a[3].value == make_rational(3, 2));
  CHECK(a[5].value == 0);
  CHECK(a[6].kind == CfKind::kEnd);
  // 0, 1, 3/2, 2, 3, inf, end.
  const auto b = cf_sequence<Rational>(ChainSide::kB, 3, 10);
  REQUIRE(b.size() == 7);
  CHECK(b[3].value == 2);
  CHECK(b[4].value == 3);
  CHECK(b[5].kind == CfKind::kInfinity);
  CHECK(b[6].kind == CfKind::kEnd);
  CHECK(cf_value<Rational>(ChainSide::kB, 3, 20).kind == CfKind::kEnd);
  CHECK_THROWS_AS(cf_sequence<Rational>(ChainSide::kA, 0, 3), std::invalid_argument);
}

TEST_CASE("continued fractions approach 2 for k = 4") {
  for (int n = 1; n <= 30; ++n) {
    CHECK(cf(ChainSide::kA, 4, n) > 2);
    CHECK(cf(ChainSide::kB, 4, n) < 2);
  }
  CHECK(cf(ChainSide::kA, 4, 4) == make_rational(5, 2));
  CHECK(cf(ChainSide::kB, 4, 3) == make_rational(3, 2));
}

TEST_CASE("region classification") {
  CHECK(region_classify(5, 2, 5) == Region::kI);   // 6.25 - 12.5 + 5 < 0
  CHECK(region_classify(4, 1, 5) == Region::kII);  // 16 - 20 + 5 > 0
  CHECK(region_classify(5, 2, 3) == Region::kII);
  CHECK(region_classify(4, 2, 4) == Region::kII);  // fixed point itself
  CHECK_THROWS_AS(region_classify(0, 2, 3), std::invalid_argument);
}

TEST_CASE("decomposition bound") {
  CHECK(d_decom(7, 3, 2) == make_rational(21, 13));   // 21 / (7 + 6)
  CHECK(d_decom(12, 4, 2) == make_rational(12, 5));   // 48 / 20
  CHECK(d_decom(5, 2, 5) == make_rational(10, 15));
}

TEST_CASE("proper bound") {
  CHECK(d_prop(5, 3, 2, 2) == make_rational(8, 5));  // (10 + 6) / (4 + 4 + 2)
  CHECK(d_prop(4, 3, 1, 2) == 2);                    // (4 + 6) / (1 + 2 + 2)
}

TEST_CASE("quantity bound") {
  // r = 5/3, k = 2. A: C_2 = 1 <= r < C_1 = 2, min(5/3, 3/(1+1)). B: C_1 = 1 < r <= C_2 = 2, same.
  const auto q = d_quan_detail(5, 3, 2, 2);
  CHECK(q.value == make_rational(3, 2));
  CHECK(q.branches.size() == 2);
  CHECK_FALSE(q.limit_form);
  // r = 4, k = 1. A: C_1 = 1 <= r, min(8/3, 2/(1+0)). B: C_2 = inf, min(8/3, 2).
  CHECK(d_quan(8, 2, 2, 1) == 2);
  // k = 4, r = 2: min(4/(1+2), 2/(1+1/2)).
  const auto lim = d_quan_detail(4, 2, 1, 4);
  CHECK(lim.limit_form);
  CHECK(lim.value == make_rational(4, 3));
  CHECK_THROWS_AS(d_quan(5, 2, 1, 5), RegionIError);
}

TEST_CASE("two-cell reports") {
  // (1,2): M_2/N_1 = 4/3, quan 2, prop (4+6)/5 = 2. (2,1): M_1/N_2 = 4, quan 2, prop 18/7.
  const auto r = closed_form(cls(8, 3, 2, 4, 2, 1));
  CHECK(r.d_info == 2);
  CHECK(r.d_linear == 2);
  CHECK(r.pairs[1].prop == make_rational(18, 7));

  const auto sym = closed_form(cls(5, 3, 2, 5, 3, 2));
  CHECK(sym.d_info == make_rational(3, 2));
  CHECK(sym.d_linear == make_rational(3, 2));
  CHECK(sym.pairs[0].decom == make_rational(15, 11));

  // K = 5, r = 5/2 on both pairs: Region I, the decomposition bound 10/15.
  const auto one = closed_form(cls(5, 2, 5, 5, 2, 5));
  CHECK(one.pairs[0].region == Region::kI);
  CHECK_FALSE(one.pairs[0].quan.has_value());
  CHECK(one.d_info == make_rational(2, 3));
}

TEST_CASE("configs outside the class are rejected") {
  const NetworkConfig g3({CellSpec{2, {UserSpec{1}}}, CellSpec{2, {UserSpec{1}}}, CellSpec{2, {UserSpec{1}}}});
  CHECK_THROWS_AS(TwoCellClassConfig::from(g3), ConfigError);
  const NetworkConfig mixed({CellSpec{2, {UserSpec{1}, UserSpec{2}}}, CellSpec{2, {UserSpec{1}}}});
  CHECK_THROWS_AS(TwoCellClassConfig::from(mixed), ConfigError);
  const auto c = cls(6, 2, 3, 4, 1, 1);
  CHECK(TwoCellClassConfig::from(c.to_config()).m == c.m);
}

TEST_CASE("scaling antennas scales every bound") {
  for (int m1 = 1; m1 <= 6; ++m1) {
    for (int m2 = 1; m2 <= 6; ++m2) {
      for (int n = 1; n <= 3; ++n) {
        for (int k = 1; k <= 5; ++k) {
          const auto a = closed_form(cls(m1, n, k, m2, n, 2));
          const auto b = closed_form(cls(2 * m1, 2 * n, k, 2 * m2, 2 * n, 2));
          CHECK(b.d_info == a.d_info * 2);
          CHECK(b.d_linear == a.d_linear * 2);
        }
      }
    }
  }
}

TEST_CASE("more antennas never lower the bounds") {
  for (int k1 = 1; k1 <= 5; ++k1) {
    for (int n1 = 1; n1 <= 4; ++n1) {
      for (int m1 = 1; m1 <= 10; ++m1) {
        Rational prev_info = -1;
        Rational prev_lin = -1;
        for (int m2 = 1; m2 <= 12; ++m2) {
          const auto r = closed_form(cls(m1, n1, k1, m2, 2, 2));
          CHECK(r.d_info >= prev_info);
          CHECK(r.d_linear >= prev_lin);
          CHECK(r.d_linear <= r.d_info);
          prev_info = r.d_info;
          prev_lin = r.d_linear;
        }
      }
    }
  }
}
