#include <doctest.h>

#include <cmath>
#include <random>

#include "anticyc/arith.hpp"

#include "anticyc/errors.hpp"
#include "anticyc/modp.hpp"
#include "anticyc/quadfield.hpp"
#include "oracles.hpp"

using namespace anticyc;

namespace {
const CurveQ e11a1(0, -1, 1, -10, -20);

std::vector<long> small_ainvs(const CurveQ& c) {
  return {c.a1.get_si(), c.a2.get_si(), c.a3.get_si(), c.a4.get_si(), c.a6.get_si()};
}
}  // namespace

TEST_CASE("count_points_fp examples") {
  auto t = count_points_fp(CurveQ::short_form(1, 1), 5);
  CHECK(t.n_p == 9);
  CHECK(t.a_p == -3);
  CHECK(count_points_fp(e11a1, 7).a_p == -2);
  auto s = count_points_fp(CurveQ::short_form(0, 1), 5);
  CHECK(s.n_p == 6);
  CHECK(s.a_p == 0);
  CHECK_FALSE(s.ordinary);
}

TEST_CASE("count_points_fp errors") {
  CHECK_THROWS_AS(count_points_fp(e11a1, 3), Error);
  CHECK_THROWS_AS(count_points_fp(e11a1, 11), Error);
  try {
    count_points_fp(e11a1, 11);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadReduction);
  }
}

TEST_CASE("table count agrees with the double-loop oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> u(-30, 30);
  for (auto p : oracle::primes_upto(61)) {
    if (p < 5) continue;
    for (int i = 0; i < 25; ++i) {
      CurveQ c(u(rng), u(rng), u(rng), u(rng), u(rng));
      if (mod_u64(c.disc(), p) == 0) continue;
      auto tr = count_points_fp(c, p);
      CHECK(tr.n_p == oracle::count_fp(small_ainvs(c), p));
      CHECK(tr.n_p == count_points_naive(c, p).n_p);
    }
  }
}

TEST_CASE("small primes through the double loop") {
  // 11a1 at 2 and 3: a_2 = -2, a_3 = -1
  CHECK(trace_at(e11a1, 2).a_p == -2);
  CHECK(trace_at(e11a1, 3).a_p == -1);
  CHECK(trace_at(e11a1, 5).a_p == 1);
}

TEST_CASE("count_points_fp2 formula") {
  CHECK(count_points_fp2(make_trace(5, -3)) == 27);
  CHECK(count_points_fp2(make_trace(7, 0)) == 64);
  CHECK(count_points_fp2(make_trace(13, 1)) == 195);
}

TEST_CASE("F_{p^2} count matches exhaustive count for p <= 31") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> u(-20, 20);
  for (auto p : oracle::primes_upto(31)) {
    if (p < 5) continue;
    for (int i = 0; i < 3; ++i) {
      CurveQ c(u(rng), u(rng), u(rng), u(rng), u(rng));
      if (mod_u64(c.disc(), p) == 0) continue;
      CHECK(count_points_fp2(count_points_fp(c, p)) == oracle::count_fp2(small_ainvs(c), p));
    }
  }
}

TEST_CASE("anomaly predicates") {
  CHECK(is_Q_anomalous(make_trace(7, 1)));
  CHECK_FALSE(is_Q_anomalous(make_trace(7, -2)));
  CHECK_FALSE(is_Q_anomalous(make_trace(13, -1)));
  CHECK(is_K_anomalous(make_trace(13, 1), SplittingType::Split));
  CHECK(is_K_anomalous(make_trace(13, -1), SplittingType::Inert));
  CHECK_FALSE(is_K_anomalous(make_trace(13, -1), SplittingType::Split));
  CHECK(is_K_anomalous(make_trace(13, 1), SplittingType::Ramified));
  CHECK_THROWS_AS(is_Q_anomalous(make_trace(5, 1)), Error);
}

TEST_CASE("Q-anomalous iff p | n_p for p >= 7") {
  for (auto p : oracle::primes_upto(200)) {
    if (p < 7) continue;
    for (std::int64_t a = -2 * static_cast<std::int64_t>(std::sqrt(p)); a * a <= 4 * static_cast<std::int64_t>(p); ++a) {
      auto tr = make_trace(p, a);
      CHECK(is_Q_anomalous(tr) == (tr.n_p % p == 0));
    }
  }
}

TEST_CASE("make_trace enforces Hasse") {
  CHECK_THROWS(make_trace(7, 6));
  CHECK(make_trace(7, 5).n_p == 3);
}

TEST_CASE("anomalous_scan") {
  auto s = anomalous_scan(e11a1, 2, 7);
  REQUIRE(s.records.size() == 1);
  CHECK(s.records[0].p == 7);
  CHECK_FALSE(s.records[0].q_anomalous);
  CHECK_FALSE(s.records[0].k_anomalous);
  auto t = anomalous_scan(e11a1, 13, 60, 4);
  CHECK(t.bad_primes == std::vector<std::uint64_t>{11});
  CHECK(t.ramified_primes == std::vector<std::uint64_t>{13});
  auto t1 = anomalous_scan(e11a1, 13, 60, 1);
  REQUIRE(t.records.size() == t1.records.size());
  for (std::size_t i = 0; i < t.records.size(); ++i) CHECK(t.records[i].a_p == t1.records[i].a_p);
}

TEST_CASE("two-torsion kills K-anomalous primes") {
  // 14a1 = [1,0,1,4,-6] has E(Q)[2] != 0
  CurveQ e(1, 0, 1, 4, -6);
  for (std::uint64_t d : {1, 2, 5, 7, 19}) {
    auto s = anomalous_scan(e, d, 400);
    for (const auto& r : s.records) CHECK_FALSE(r.k_anomalous);
  }
}

TEST_CASE("torsion congruence ell | n_p") {
  for (auto p : oracle::primes_upto(300)) {
    if (p < 5 || p == 11) continue;
    CHECK(count_points_fp(e11a1, p).n_p % 5 == 0);
  }
}

TEST_CASE("lang_trotter_counts") {
  CHECK(lang_trotter_counts(e11a1, 5, 5) == 0);
  CHECK(lang_trotter_counts(e11a1, -2, 7) == 1);
  CHECK(lang_trotter_counts(e11a1, 0, 4) == 0);
  std::uint64_t total = 0;
  for (std::int64_t t = -40; t <= 40; ++t) total += lang_trotter_counts(e11a1, t, 300);
  std::uint64_t good = 0;
  for (auto p : oracle::primes_upto(300))
    if (p >= 5 && p != 11) ++good;
  CHECK(total == good);
}
