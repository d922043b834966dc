#include <doctest.h>

#include <functional>
#include <random>

#include "anticyc/errors.hpp"
#include "anticyc/indefinite.hpp"
#include "anticyc/ingest.hpp"

using namespace anticyc;

namespace {
const CurveQ e11a1(0, -1, 1, -10, -20);
const CurveQ tw7(0, 1, 1, -506, 7774);  // the twist of 11a1 by Q(sqrt(-7))
const RatPoint P7{44, -270};

CurveStore fixtures() {
  StoreOptions o;
  o.fixtures_dir = ANTICYC_FIXTURES_DIR;
  o.offline = true;
  return CurveStore(o);
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

Int mod(const Int& x, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}
}  // namespace

TEST_CASE("admissibility of (11a1, Q(sqrt(-7)), p)") {
  ImageData img{std::vector<std::uint64_t>{5}};
  auto r17 = admissible(e11a1, QuadField(7), 17, img);
  // -7 = 10 mod 17 is a nonresidue, so 17 is inert
  CHECK(r17.conditions[0].value == Tri::False);
  CHECK(r17.conditions[1].value == Tri::True);
  CHECK_FALSE(r17.admissible);
  auto r11 = admissible(e11a1, QuadField(7), 11, img);
  CHECK(r11.conditions[3].value == Tri::False);
  CHECK_FALSE(r11.admissible);
  auto r13 = admissible(e11a1, QuadField(7), 13, img);
  CHECK(r13.conditions[0].value == Tri::False);
  CHECK_FALSE(r13.admissible);
  // 29 splits in Q(sqrt(-7)): -7 = 22 = 14^2 mod 29
  auto r29 = admissible(e11a1, QuadField(7), 29, img);
  CHECK(r29.conditions[0].value == Tri::True);
  CHECK(r29.conditions[5].source == Provenance::Ingested);
}

TEST_CASE("admissibility preconditions") {
  ImageData none;
  CHECK(code_of([&] { admissible(e11a1, QuadField(3), 7, none); }) == ErrorCode::HypothesisFailed);
  CHECK(code_of([&] { admissible(CurveQ(0, 0, 1, 0, -7), QuadField(7), 13, none); }) == ErrorCode::HypothesisFailed);
}

TEST_CASE("(17a1, Q(sqrt(-19)), 5) is admissible") {
  auto store = fixtures();
  auto rec = store.fetch_curve("17a1");
  auto r = admissible(rec.curve(), QuadField(19), 5, store.image_data("17a1"));
  for (std::size_t i = 0; i < 7; ++i) {
    INFO("condition ", i + 1, ": ", r.conditions[i].detail);
    CHECK(r.conditions[i].value == Tri::True);
  }
  CHECK(r.admissible);
}

TEST_CASE("admissibility is monotone in ingested data") {
  auto store = fixtures();
  for (const auto& label : {"11a1", "17a1", "19a1", "37a1"}) {
    CurveRecord rec;
    try {
      rec = store.fetch_curve(label);
    } catch (const Error&) {
      continue;
    }
    for (std::uint64_t d : {7, 19, 35, 39, 71})
      for (std::uint64_t p : {5, 7, 13, 17, 19, 29}) {
        AdmissibilityReport bare, full;
        try {
          bare = admissible(rec.curve(), QuadField(d), p, ImageData{});
          full = admissible(rec.curve(), QuadField(d), p, store.image_data(label));
        } catch (const Error&) {
          continue;
        }
        for (std::size_t i = 0; i < 7; ++i)
          if (bare.conditions[i].value == Tri::True && bare.conditions[i].source == Provenance::Computed)
            CHECK(full.conditions[i].value == Tri::True);
      }
  }
}

TEST_CASE("residual_ramified_at") {
  CHECK(residual_ramified_at(e11a1, 11, 7));
  CHECK_FALSE(residual_ramified_at(e11a1, 11, 5));
  CHECK_THROWS_AS(residual_ramified_at(e11a1, 7, 5), Error);
}

TEST_CASE("surjectivity_test") {
  ImageData fixture{std::vector<std::uint64_t>{5}};
  CHECK(surjectivity_test(e11a1, 7, fixture) == Tri::True);
  CHECK(surjectivity_test(e11a1, 5, fixture) == Tri::False);
  CHECK(surjectivity_test(e11a1, 7, ImageData{}, 3) == Tri::Undecided);
  CHECK(surjectivity_test(e11a1, 7, ImageData{}) == Tri::True);
  // the rational 5-isogeny keeps the image inside a Borel subgroup, so sampling never certifies it
  CHECK(surjectivity_test(e11a1, 5, ImageData{}) == Tri::Undecided);
}

TEST_CASE("formal_log matches PARI ellpadiclog") {
  const Int v17("296592497053393"), v19("5807828391902306");
  auto l17 = formal_log(tw7, P7, 17, 12);
  Int m17 = ipow(17, 12);
  CHECK((l17.value == mod(v17, m17) || l17.value == mod(-v17, m17)));
  CHECK(l17.valuation() == 1);
  auto l19 = formal_log(tw7, P7, 19, 12);
  Int m19 = ipow(19, 12);
  CHECK((l19.value == mod(v19, m19) || l19.value == mod(-v19, m19)));
  CHECK(l19.valuation() == 1);
}

TEST_CASE("formal_log homomorphism and precision stability") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> u(-4, 4);
  for (std::uint64_t p : {13, 17, 19}) {
    auto base = formal_log(tw7, P7, p, 8);
    Int M = ipow(p, 8);
    for (int i = 0; i < 12; ++i) {
      long a = u(rng), b = u(rng);
      if (a + b == 0) continue;
      RatPoint Q = add(tw7, mul(tw7, P7, a), mul(tw7, P7, b));
      auto lq = formal_log(tw7, Q, p, 8);
      CHECK(lq.value == mod(base.value * (a + b), M));
    }
    auto more = formal_log(tw7, P7, p, 10);
    CHECK(mod(more.value, M) == base.value);
  }
}

TEST_CASE("formal_log errors") {
  CHECK(code_of([] { formal_log(tw7, RatPoint::at_infinity(), 17, 4); }) == ErrorCode::PointAtInfinity);
  CHECK(code_of([] { formal_log(tw7, RatPoint{0, 0}, 17, 4); }) == ErrorCode::InvalidArgument);
  // 11a1 has the 5-torsion point (5, 5)
  CHECK(code_of([] { formal_log(e11a1, RatPoint{5, 5}, 7, 4); }) == ErrorCode::PointAtInfinity);
  CHECK(code_of([] { formal_log(tw7, P7, 17, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("make_heegner_input") {
  CHECK(code_of([] { make_heegner_input(e11a1, 7, 17, tw7, RatPoint::at_infinity(), true); }) ==
        ErrorCode::MissingGenerator);
  CHECK(code_of([] { make_heegner_input(e11a1, 7, 17, tw7, RatPoint{1, 1}, true); }) == ErrorCode::InvalidArgument);
  auto in = make_heegner_input(e11a1, 7, 17, tw7, P7, true);
  CHECK(in.on_twist);
}

TEST_CASE("theorem109_decide") {
  auto store = fixtures();
  auto img = store.image_data("11a1");
  auto in = store.heegner_input("11a1", 7, 17);
  CHECK(in.on_twist);
  CHECK(store.rank_over_K({"11a1", 7}) == 1);
  auto rep = heegner_report(in, img, 1);
  CHECK(rep.v_log == 1);
  CHECK(rep.unit);
  CHECK(rep.certified_precision >= 3);
  CHECK_FALSE(rep.admissibility.admissible);
  CHECK(code_of([&] { theorem109_decide(in, img, 1); }) == ErrorCode::NotAdmissible);
  CHECK(code_of([&] { theorem109_decide(in, img, 0); }) == ErrorCode::HypothesisFailed);

  auto in17 = store.heegner_input("17a1", 19, 5);
  auto ok = theorem109_decide(in17, store.image_data("17a1"), store.rank_over_K({"17a1", 19}));
  CHECK(ok.admissibility.admissible);
  CHECK(ok.v_log >= 1);
  CHECK(ok.bdp_constant_valuation == 2 * (ok.v_log - 1));
}

TEST_CASE("a p-divisible multiple is not a unit") {
  auto in = make_heegner_input(e11a1, 7, 17, tw7, mul(tw7, P7, 17), true);
  auto rep = heegner_report(in, ImageData{std::vector<std::uint64_t>{5}}, 1);
  CHECK(rep.v_log == 2);
  CHECK_FALSE(rep.unit);
  CHECK_FALSE(rep.invariants_vanish);
}
