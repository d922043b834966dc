#include <doctest.h>

#include <cmath>
#include <functional>

#include "anticyc/errors.hpp"
#include "anticyc/ingest.hpp"
#include "anticyc/iwasawa.hpp"
#include "anticyc/modp.hpp"

using namespace anticyc;

namespace {
const CurveQ e11a1(0, -1, 1, -10, -20);

EulerCharInputs inputs(std::uint64_t p, long sha, long alpha, long tau, long tors) {
  EulerCharInputs in;
  in.p = p;
  in.sha_p = sha;
  in.alpha_p = alpha;
  in.tau = tau;
  in.torsion_p = tors;
  return in;
}

KData trivial_data() {
  KData k;
  k.sha_Q = 1;
  k.sha_twist = 1;
  k.source = "synthetic";
  return k;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Internal;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

CurveStore fixtures() {
  StoreOptions o;
  o.fixtures_dir = ANTICYC_FIXTURES_DIR;
  o.offline = true;
  return CurveStore(o);
}
}  // namespace

TEST_CASE("alpha_p") {
  CHECK(alpha_p_anticyclotomic(make_trace(7, -2), SplittingType::Split) == 1);
  CHECK(alpha_p_anticyclotomic(make_trace(7, 1), SplittingType::Split) == 49);
  CHECK(alpha_p_anticyclotomic(make_trace(7, 1), SplittingType::Ramified) == 7);
  CHECK(alpha_p_anticyclotomic(make_trace(11, -1), SplittingType::Inert) == 11);
  CHECK(alpha_p_anticyclotomic(make_trace(11, 1), SplittingType::Inert) == 11);
  CHECK(alpha_p_cyclotomic(make_trace(7, 1)) == 7);
  CHECK(code_of([] { alpha_p_anticyclotomic(make_trace(5, 1), SplittingType::Split); }) == ErrorCode::SmallPrime);
}

TEST_CASE("euler_characteristic") {
  CHECK(euler_characteristic(inputs(7, 1, 1, 1, 1)) == 1);
  CHECK(euler_characteristic(inputs(7, 49, 1, 7, 7)) == 7);
  CHECK(euler_characteristic(inputs(5, 25, 5, 1, 5)) == 25);
  CHECK(code_of([] { euler_characteristic(inputs(7, 1, 1, 1, 7)); }) == ErrorCode::NotIntegral);
  CHECK(code_of([] { euler_characteristic(inputs(7, 3, 1, 1, 1)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("euler_characteristic output is a power of p") {
  for (std::uint64_t p : {5, 7, 11})
    for (long s = 0; s < 3; ++s)
      for (long a = 0; a < 3; ++a)
        for (long t = 0; t < 3; ++t)
          for (long r = 0; r < 3; ++r) {
            auto pw = [&](long e) { return static_cast<long>(std::pow(p, e)); };
            auto in = inputs(p, pw(s), pw(a), pw(t), pw(r));
            if (s + 2 * a + t < 2 * r) {
              CHECK(code_of([&] { euler_characteristic(in); }) == ErrorCode::NotIntegral);
            } else {
              Int chi = euler_characteristic(in);
              CHECK(is_power_of(chi, p));
              CHECK(chi == pw(s + 2 * a + t - 2 * r));
            }
          }
}

TEST_CASE("classify") {
  auto one = classify(1, 7);
  CHECK(one.mu_zero_and_lambda_zero);
  CHECK(one.selmer_trivial);
  auto p = classify(7, 7);
  CHECK_FALSE(p.mu_zero_and_lambda_zero);
  CHECK_FALSE(p.selmer_trivial);
  auto p3 = classify(343, 7);
  CHECK(p3.chi == 343);
  CHECK_FALSE(p3.selmer_trivial);
  for (int k = 0; k < 6; ++k) CHECK(classify(ipow(5, k), 5).selmer_trivial == (k == 0));
}

TEST_CASE("exceptional set") {
  KData k = trivial_data();
  k.torsion_Q = {5};
  // 11 splits in Q(sqrt(-7)) and c_11 = 5, E(K)[5] != 0: 5 is in M, and no other prime below 60
  auto M = exceptional_set_M(e11a1, QuadField(7), 60, k);
  CHECK(M == std::set<std::uint64_t>{5});
  KData none = trivial_data();
  auto M3 = exceptional_set_M(e11a1, QuadField(3), 60, none);
  CHECK(M3.empty());
  KData missing;
  CHECK(code_of([&] { exceptional_set_M(e11a1, QuadField(3), 60, missing); }) == ErrorCode::MissingData);
}

TEST_CASE("theorem48_decide") {
  KData k = trivial_data();
  k.torsion_Q = {5};
  QuadField K(7);
  auto r = theorem48_decide(e11a1, K, 7, k);  // a_7 = -2
  CHECK(r.a_p == -2);
  CHECK_FALSE(r.k_anomalous);
  CHECK(r.report.selmer_trivial);
  CHECK(r.report.chi == 1);
  CHECK(code_of([&] { theorem48_decide(e11a1, K, 5, k); }) == ErrorCode::SmallPrime);
}

TEST_CASE("theorem48 agrees with the Euler characteristic on a prime range") {
  KData k = trivial_data();
  k.torsion_Q = {5};
  for (std::uint64_t d : {2, 3, 7, 19}) {
    QuadField K(d);
    for (auto p : primes_in(7, 400)) {
      if (p == 11 || p == d) continue;
      auto tr = count_points_fp(e11a1, p);
      if (!tr.ordinary) continue;
      auto r = theorem48_decide(e11a1, K, p, k);
      Int chi = euler_characteristic(anticyclotomic_inputs(e11a1, K, p, k));
      CHECK(r.report.selmer_trivial == classify(chi, p).selmer_trivial);
      CHECK(r.k_anomalous == !r.report.selmer_trivial);
    }
  }
}

TEST_CASE("theorem48 on an inert K-anomalous prime") {
  // 5-torsion rules out a_p = 1 for 11a1; a_p = -1 at an inert p is K-anomalous
  KData k = trivial_data();
  k.torsion_Q = {5};
  QuadField K(7);
  unsigned found = 0;
  for (auto p : primes_in(7, 2000)) {
    if (p == 11) continue;
    auto tr = count_points_fp(e11a1, p);
    CHECK(tr.a_p != 1);
    if (tr.a_p != -1 || splitting(p, K) != SplittingType::Inert) continue;
    auto r = theorem48_decide(e11a1, K, p, k);
    CHECK(r.k_anomalous);
    CHECK_FALSE(r.report.selmer_trivial);
    CHECK(r.report.chi == ipow(p, 2));
    ++found;
  }
  CHECK(found > 0);
}

TEST_CASE("theorem48 exceptional set error") {
  KData k = trivial_data();
  k.sha_twist = 49;
  CHECK(code_of([&] { theorem48_decide(e11a1, QuadField(7), 7, k); }) == ErrorCode::InExceptionalSet);
  KData r1 = trivial_data();
  r1.rank_twist = 1;
  CHECK(code_of([&] { theorem48_decide(e11a1, QuadField(7), 7, r1); }) == ErrorCode::Unsupported);
}

TEST_CASE("theorem74_decide") {
  auto store = fixtures();
  auto rec = store.fetch_curve("11a1");
  // d = 5: rank 0 twist per the fixture
  auto data = store.kdata("11a1", 5);
  REQUIRE(data.rank_twist == 0);
  auto r = theorem74_decide(e11a1, 5, 7, data);
  CHECK(r.a_p == -2);
  CHECK(r.chi_Q == 1);
  REQUIRE(r.selmer_trivial.has_value());
  CHECK(*r.selmer_trivial);
  // p = 5: E(Q)[5] != 0
  CHECK(message_of([&] { theorem74_decide(e11a1, 5, 5, data); }).find("(iii)") != std::string::npos);
  // a_p = 1 mod p: 11a1 has a_13 = 4, a_17 = -2, a_19 = 0, a_23 = -1
  CHECK(message_of([&] { theorem74_decide(e11a1, 5, 23, data); }).find("(iv)") != std::string::npos);
  KData r1 = data;
  r1.rank_twist = 1;
  CHECK(code_of([&] { theorem74_decide(e11a1, 5, 7, r1); }) == ErrorCode::HypothesisFailed);
  KData q1 = data;
  q1.rank_Q = 1;
  CHECK(message_of([&] { theorem74_decide(e11a1, 5, 7, q1); }).find("(ii)") != std::string::npos);
  CHECK(message_of([&] { theorem74_decide(e11a1, 5, 3, data); }).find("(i)") != std::string::npos);
}

TEST_CASE("lambda_rank_check") {
  CHECK(lambda_rank_check(0, 0));
  CHECK_FALSE(lambda_rank_check(0, 1));
  CHECK(lambda_rank_check(3, 1));
}

TEST_CASE("KData decomposition") {
  KData k = trivial_data();
  k.sha_Q = 9;
  k.sha_twist = 4;
  k.torsion_Q = {5};
  k.torsion_twist = {2, 2};
  CHECK(k.sha_K_p(3) == 9);
  CHECK(k.sha_K_p(5) == 1);
  CHECK(k.torsion_K_p(5) == 5);
  CHECK(code_of([&] { k.torsion_K_p(2); }) == ErrorCode::Unsupported);
  KData m;
  CHECK(code_of([&] { m.sha_K_p(3); }) == ErrorCode::MissingData);
}
