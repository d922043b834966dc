#include <doctest.h>

#include <random>

#include "anticyc/curve.hpp"
#include "oracles.hpp"

using namespace anticyc;

TEST_CASE("discriminant and invariants") {
  CHECK(discriminant(CurveQ::short_form(0, 0)) == 0);
  CHECK(discriminant(CurveQ::short_form(1, 1)) == -496);
  CurveQ e11(0, -1, 1, -10, -20);
  CHECK(e11.disc() == -161051);
  CHECK(e11.c4() == 496);
  CHECK(e11.c6() == 20008);
  CHECK(e11.j_invariant() == Rat(-122023936, 161051));
  CHECK(e11.str() == "[0,-1,1,-10,-20]");
  CHECK_THROWS(CurveQ::short_form(-3, 2).j_invariant());
}

TEST_CASE("b-invariant identity 4 b8 = b2 b6 - b4^2") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> u(-50, 50);
  for (int i = 0; i < 200; ++i) {
    CurveQ c(u(rng), u(rng), u(rng), u(rng), u(rng));
    CHECK(4 * c.b8() == c.b2() * c.b6() - c.b4() * c.b4());
    CHECK(1728 * c.disc() == c.c4() * c.c4() * c.c4() - c.c6() * c.c6());
  }
}

TEST_CASE("height") {
  CHECK(height(2, 3) == 9);
  CHECK(height(0, 0) == 0);
  CHECK(height(-3, 2) == 27);
  for (long A = -6; A <= 6; ++A)
    for (long B = -6; B <= 6; ++B) {
      CHECK(height(A, B) == height(A, -B));
      CHECK(height(A, B) == height(-A, B));
    }
}

TEST_CASE("twelfth-power-free condition") {
  CHECK(twelfth_power_free(0, 1));
  CHECK_FALSE(twelfth_power_free(16, 64));
  CHECK(twelfth_power_free(16, 32));
  CHECK_FALSE(twelfth_power_free(0, 64));
  CHECK_FALSE(twelfth_power_free(81, 0));
  CHECK(twelfth_power_free(-3, 2));
}

TEST_CASE("enumeration") {
  CHECK(enumerate_curves({0}).empty());
  auto c16 = enumerate_curves({16});
  CHECK(c16.size() == 44);
  for (const auto& c : c16) {
    CHECK(c.a4 >= -2);
    CHECK(c.a4 <= 2);
    CHECK(abs(c.a6) <= 4);
  }
  for (long x : {1L, 16L, 100L, 1000L, 20000L}) {
    auto got = enumerate_curves({x});
    auto want = oracle::enumerate_short(x);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].a4 == want[i].A);
      CHECK(got[i].a6 == want[i].B);
      CHECK(got[i].disc() != 0);
    }
  }
}

TEST_CASE("enumeration is monotone in x") {
  auto small = enumerate_curves({500});
  auto large = enumerate_curves({3000});
  std::size_t j = 0;
  for (const auto& c : small) {
    while (j < large.size() && !(large[j] == c)) ++j;
    CHECK(j < large.size());
  }
}

TEST_CASE("group law on 37a1") {
  CurveQ e(0, 0, 1, -1, 0);
  RatPoint P{0, 0};
  REQUIRE(on_curve(e, P));
  CHECK(mul(e, P, 2) == RatPoint{1, 0});
  CHECK(mul(e, P, 3) == RatPoint{-1, -1});
  CHECK(mul(e, P, 4) == RatPoint{2, -3});
  CHECK(mul(e, P, 5) == RatPoint{Rat(1, 4), Rat(-5, 8)});
  CHECK(mul(e, P, 6) == RatPoint{6, 14});
  CHECK(mul(e, P, -1) == negate(e, P));
  CHECK(mul(e, P, 0).infinity);
  CHECK(add(e, P, negate(e, P)).infinity);
}

TEST_CASE("group law: associativity and scalar compatibility") {
  CurveQ e(0, 0, 1, -1, 0);
  RatPoint P{0, 0};
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b) {
      RatPoint lhs = add(e, mul(e, P, a), mul(e, P, b));
      CHECK(lhs == mul(e, P, a + b));
      CHECK(on_curve(e, lhs));
    }
  RatPoint Q = mul(e, P, 3), R = mul(e, P, -5);
  CHECK(add(e, add(e, P, Q), R) == add(e, P, add(e, Q, R)));
}
