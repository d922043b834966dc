#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "anticyc/errors.hpp"
#include "anticyc/ingest.hpp"

using namespace anticyc;
namespace fs = std::filesystem;

namespace {

StoreOptions fixture_opts() {
  StoreOptions o;
  o.fixtures_dir = ANTICYC_FIXTURES_DIR;
  o.offline = true;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
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

fs::path temp_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("anticyc_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// LMFDB-shaped mock serving 11a1, failing the first `flaky` requests with HTTP 503.
struct MockLmfdb {
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::atomic<int> hits{0};
  std::atomic<int> flaky{0};

  MockLmfdb() {
    server.Get("/api/ec_curvedata/", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      if (flaky > 0) {
        --flaky;
        res.status = 503;
        return;
      }
      std::string label = req.get_param_value("Clabel");
      if (label != "11a1") {
        res.set_content(R"({"data": []})", "application/json");
        return;
      }
      res.set_content(
          R"({"data": [{"lmfdb_label": "11.a2", "Clabel": "11a1", "ainvs": [0,-1,1,-10,-20], "conductor": 11,
              "rank": 0, "torsion_structure": [5], "sha": 1, "nonmax_primes": [5]}]})",
          "application/json");
    });
    server.Get("/api/ec_localdata/", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      if (req.get_param_value("lmfdb_label") != "11.a2") {
        res.status = 404;
        return;
      }
      res.set_content(
          R"({"data": [{"prime": 11, "tamagawa_number": 5, "kodaira_symbol": 9, "conductor_valuation": 1,
              "discriminant_valuation": 5}]})",
          "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~MockLmfdb() {
    server.stop();
    thread.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port); }
};

}  // namespace

TEST_CASE("fixture 11a1") {
  CurveStore store(fixture_opts());
  auto r = store.fetch_curve("11a1");
  CHECK(r.conductor == 11);
  CHECK(r.rank == 0);
  CHECK(r.torsion_structure == std::vector<std::uint64_t>{5});
  CHECK(r.tamagawa().at(11) == 5);
  REQUIRE(r.nonmaximal_primes.has_value());
  CHECK(*r.nonmaximal_primes == std::vector<std::uint64_t>{5});
  CHECK(r.curve() == CurveQ(0, -1, 1, -10, -20));
  CHECK(store.network_fetches() == 0);
}

TEST_CASE("every fixture validates and every generator lies on its curve") {
  CurveStore store(fixture_opts());
  auto labels = store.fixture_labels();
  CHECK(labels.size() == 35);
  for (const auto& l : labels) {
    auto r = store.fetch_curve(l);
    CHECK(r.label == l);
    CHECK(r.conductor >= 11);
    for (const auto& P : r.generators) CHECK(on_curve(r.curve(), P));
    for (const auto& t : r.twists) {
      for (const auto& P : t.generators) CHECK(on_curve(t.curve(), P));
      CHECK(t.curve().j_invariant() == r.curve().j_invariant());
    }
  }
}

TEST_CASE("serialization round-trips byte for byte") {
  for (const auto& e : fs::directory_iterator(ANTICYC_FIXTURES_DIR)) {
    std::string text = slurp(e.path());
    auto r = parse_record(text);
    CHECK(serialize(r) == text);
    CHECK(serialize(parse_record(serialize(r))) == serialize(r));
  }
}

TEST_CASE("record validation") {
  CurveStore store(fixture_opts());
  auto r = store.fetch_curve("11a1");
  auto bad = r;
  bad.generators.push_back(RatPoint{1, 1});
  CHECK(code_of([&] { validate(bad); }) == ErrorCode::InvalidArgument);
  auto sing = r;
  sing.ainvs = {0, 0, 0, 0, 0};
  CHECK(code_of([&] { validate(sing); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_record("{not json"); }) == ErrorCode::InvalidArgument);
  auto v2 = nlohmann::json::parse(serialize(r));
  v2["format_version"] = 2;
  CHECK(code_of([&] { parse_record(v2.dump()); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("labels and Kodaira codes") {
  CHECK(is_cremona_label("11a1"));
  CHECK(is_cremona_label("5077a1"));
  CHECK_FALSE(is_cremona_label("nonsense"));
  CHECK_FALSE(is_cremona_label("11.a2"));
  CurveStore store(fixture_opts());
  CHECK(code_of([&] { store.fetch_curve("nonsense"); }) == ErrorCode::NotFound);
  CHECK(code_of([&] { store.fetch_curve("5077a1"); }) == ErrorCode::NetworkUnavailable);
  CHECK(kodaira_from_code(1) == "I0");
  CHECK(kodaira_from_code(9) == "I5");
  CHECK(kodaira_from_code(2) == "II");
  CHECK(kodaira_from_code(-1) == "I0*");
  CHECK(kodaira_from_code(-7) == "I3*");
  CHECK(kodaira_from_code(-2) == "II*");
  CHECK(kodaira_from_code(-4) == "IV*");
  CHECK_THROWS(kodaira_from_code(0));
}

TEST_CASE("twist lookups") {
  CurveStore store(fixture_opts());
  CHECK(store.rank_over_K({"11a1", 7}) == 1);
  CHECK(store.rank_over_K({"11a1", 5}) == 0);
  CHECK(code_of([&] { store.rank_over_K({"11a1", 11}); }) == ErrorCode::MissingTwist);
  CHECK(store.sha_over_K_odd_part({"11a1", 5}, 3) == 1);
  CHECK(code_of([&] { store.sha_over_K_odd_part({"11a1", 7}, 3); }) == ErrorCode::MissingData);
  auto k = store.kdata("11a1", 5);
  CHECK(k.rank_K() == 0);
  CHECK(k.torsion_Q == std::vector<std::uint64_t>{5});
}

TEST_CASE("odd Sha frequencies from raw fixture JSON") {
  CurveStore store(fixture_opts());
  for (const std::string label : {"11a1", "14a1", "15a1", "17a1"}) {
    auto row = sha_frequency_row(store, label, 5, 150);
    auto raw = nlohmann::json::parse(slurp(fs::path(ANTICYC_FIXTURES_DIR) / (label + ".json")));
    long N = raw["conductor"].get<long>();
    long base_sha = raw["sha_an"].get<long>();
    unsigned eligible = 0, w3 = 0, w5 = 0, w7 = 0;
    for (const auto& t : raw["twists"]) {
      long d = t["d"].get<long>();
      bool prime = d > 1;
      for (long q = 2; q * q <= d; ++q) prime = prime && d % q != 0;
      if (!prime || d < 5 || d > 150 || N % d == 0) continue;
      if (raw["rank"].get<int>() + t["rank"].get<int>() != 0) continue;
      ++eligible;
      long s = base_sha * t["sha_an"].get<long>();
      while (s % 2 == 0) s /= 2;
      w3 += s % 3 == 0;
      w5 += s % 5 == 0;
      while (s % 3 == 0) s /= 3;
      while (s % 5 == 0) s /= 5;
      w7 += s > 1;
    }
    INFO(label);
    CHECK(row.eligible.size() == eligible);
    CHECK(row.with3 == w3);
    CHECK(row.with5 == w5);
    CHECK(row.with_ge7 == w7);
  }
}

TEST_CASE("client against a mock server") {
  MockLmfdb mock;
  ClientOptions co;
  co.base_url = mock.url();
  co.timeout_seconds = 2;
  co.backoff_ms = 1;
  LmfdbClient client(co);
  auto r = client.fetch("11a1");
  CHECK(r.conductor == 11);
  REQUIRE(r.local_data.size() == 1);
  CHECK(r.local_data[0].kodaira == "I5");
  CHECK(r.local_data[0].tamagawa == 5);
  CHECK(r.sha_order == Int(1));
  CHECK(code_of([&] { client.fetch("37a1"); }) == ErrorCode::NotFound);

  mock.flaky = 2;
  int before = mock.hits;
  CHECK(client.fetch("11a1").conductor == 11);
  CHECK(mock.hits - before == 4);  // two 503s, then curve and local data

  mock.flaky = 10;
  CHECK(code_of([&] { client.fetch("11a1"); }) == ErrorCode::NetworkUnavailable);
  mock.flaky = 0;
}

TEST_CASE("store caches network records and honours offline mode") {
  MockLmfdb mock;
  fs::path cache = temp_dir("cache");
  StoreOptions o;
  o.cache_dir = cache.string();
  o.client.base_url = mock.url();
  o.client.backoff_ms = 1;
  {
    CurveStore store(o);
    auto r = store.fetch_curve("11a1");
    CHECK(store.network_fetches() == 1);
    store.fetch_curve("11a1");
    CHECK(store.network_fetches() == 1);
    CHECK(fs::exists(cache / "11a1.json"));
  }
  std::string first = slurp(cache / "11a1.json");
  StoreOptions off = o;
  off.offline = true;
  off.client.base_url = "http://127.0.0.1:1";
  CurveStore offline(off);
  auto again = offline.fetch_curve("11a1");
  CHECK(offline.network_fetches() == 0);
  CHECK(serialize(again) == first);
  CHECK(code_of([&] { offline.fetch_curve("14a1"); }) == ErrorCode::NetworkUnavailable);
  fs::remove_all(cache);
}

TEST_CASE("unreachable endpoint") {
  StoreOptions o;
  o.client.base_url = "http://127.0.0.1:1";
  o.client.max_retries = 1;
  o.client.backoff_ms = 1;
  o.client.timeout_seconds = 1;
  CurveStore store(o);
  CHECK(code_of([&] { store.fetch_curve("11a1"); }) == ErrorCode::NetworkUnavailable);
}

TEST_CASE("concurrent readers") {
  CurveStore store(fixture_opts());
  std::vector<std::thread> ts;
  std::atomic<int> ok{0};
  for (int i = 0; i < 8; ++i)
    ts.emplace_back([&] {
      for (const auto& l : store.fixture_labels())
        if (store.fetch_curve(l).label == l) ++ok;
    });
  for (auto& t : ts) t.join();
  CHECK(ok == 8 * 35);
}
