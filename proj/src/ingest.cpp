#include "anticyc/ingest.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <regex>
#include <sstream>
#include <thread>

#include "anticyc/errors.hpp"
#include "anticyc/local.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace anticyc {

std::map<std::uint64_t, std::uint64_t> CurveRecord::tamagawa() const {
  std::map<std::uint64_t, std::uint64_t> m;
  for (const auto& l : local_data) m[l.prime] = l.tamagawa;
  return m;
}

const TwistRecord* CurveRecord::twist(std::int64_t d) const {
  for (const auto& t : twists)
    if (t.d == d) return &t;
  return nullptr;
}

bool is_cremona_label(const std::string& label) {
  static const std::regex re("^[1-9][0-9]*[a-z]+[1-9][0-9]*$");
  return std::regex_match(label, re);
}

namespace {

Int int_of(const ojson& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
  fail(ErrorCode::InvalidArgument, "expected an integer, got " + j.dump());
}

// Integers are written as JSON numbers when they fit in 64 bits, else as strings.
ojson json_of(const Int& n) {
  if (n.fits_slong_p()) return ojson(static_cast<std::int64_t>(n.get_si()));
  return ojson(n.get_str());
}

std::array<Int, 5> ainvs_of(const ojson& j) {
  if (!j.is_array() || j.size() != 5) fail(ErrorCode::InvalidArgument, "ainvs must have 5 entries");
  std::array<Int, 5> a;
  for (std::size_t i = 0; i < 5; ++i) a[i] = int_of(j[i]);
  return a;
}

ojson json_of(const std::array<Int, 5>& a) {
  ojson j = ojson::array();
  for (const auto& x : a) j.push_back(json_of(x));
  return j;
}

std::vector<RatPoint> points_of(const ojson& j) {
  std::vector<RatPoint> pts;
  for (const auto& p : j) {
    Rat x(p.at(0).get<std::string>()), y(p.at(1).get<std::string>());
    x.canonicalize();
    y.canonicalize();
    pts.push_back(RatPoint{x, y, false});
  }
  return pts;
}

ojson json_of(const std::vector<RatPoint>& pts) {
  ojson j = ojson::array();
  for (const auto& p : pts) j.push_back(ojson::array({p.x.get_str(), p.y.get_str()}));
  return j;
}

ojson opt_int(const std::optional<Int>& v) { return v ? json_of(*v) : ojson(nullptr); }

std::optional<Int> opt_int_of(const ojson& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return int_of(j.at(key));
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorCode::NotFound, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::string serialize(const CurveRecord& r) {
  ojson j;
  j["format_version"] = r.format_version;
  j["label"] = r.label;
  j["source"] = r.source;
  j["ainvs"] = json_of(r.ainvs);
  j["conductor"] = json_of(r.conductor);
  j["rank"] = r.rank;
  j["torsion_structure"] = r.torsion_structure;
  ojson loc = ojson::array();
  for (const auto& l : r.local_data) {
    ojson e;
    e["prime"] = l.prime;
    e["conductor_exponent"] = l.conductor_exponent;
    e["kodaira"] = l.kodaira;
    e["tamagawa"] = l.tamagawa;
    e["disc_valuation"] = l.disc_valuation;
    loc.push_back(e);
  }
  j["local_data"] = loc;
  j["sha_an"] = opt_int(r.sha_order);
  j["nonmaximal_primes"] = r.nonmaximal_primes ? ojson(*r.nonmaximal_primes) : ojson(nullptr);
  j["generators"] = json_of(r.generators);
  ojson tw = ojson::array();
  for (const auto& t : r.twists) {
    ojson e;
    e["d"] = t.d;
    e["disc"] = t.disc;
    e["ainvs"] = json_of(t.ainvs);
    e["conductor"] = json_of(t.conductor);
    e["rank"] = t.rank;
    e["torsion_structure"] = t.torsion_structure;
    e["sha_an"] = opt_int(t.sha_order);
    e["generators"] = json_of(t.generators);
    tw.push_back(e);
  }
  j["twists"] = tw;
  return j.dump(1) + "\n";
}

CurveRecord parse_record(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed record: ") + e.what());
  }
  try {
    CurveRecord r;
    r.format_version = j.at("format_version").get<int>();
    if (r.format_version != kRecordFormatVersion)
      fail(ErrorCode::InvalidArgument, "unsupported record format_version " + std::to_string(r.format_version));
    r.label = j.at("label").get<std::string>();
    r.source = j.value("source", std::string());
    r.ainvs = ainvs_of(j.at("ainvs"));
    r.conductor = int_of(j.at("conductor"));
    r.rank = j.at("rank").get<int>();
    r.torsion_structure = j.at("torsion_structure").get<std::vector<std::uint64_t>>();
    for (const auto& e : j.at("local_data")) {
      LocalRecord l;
      l.prime = e.at("prime").get<std::uint64_t>();
      l.conductor_exponent = e.at("conductor_exponent").get<int>();
      l.kodaira = e.at("kodaira").get<std::string>();
      l.tamagawa = e.at("tamagawa").get<std::uint64_t>();
      l.disc_valuation = e.at("disc_valuation").get<int>();
      r.local_data.push_back(l);
    }
    r.sha_order = opt_int_of(j, "sha_an");
    if (j.contains("nonmaximal_primes") && !j.at("nonmaximal_primes").is_null())
      r.nonmaximal_primes = j.at("nonmaximal_primes").get<std::vector<std::uint64_t>>();
    if (j.contains("generators")) r.generators = points_of(j.at("generators"));
    if (j.contains("twists"))
      for (const auto& e : j.at("twists")) {
        TwistRecord t;
        t.d = e.at("d").get<std::int64_t>();
        t.disc = e.at("disc").get<std::int64_t>();
        t.ainvs = ainvs_of(e.at("ainvs"));
        t.conductor = int_of(e.at("conductor"));
        t.rank = e.at("rank").get<int>();
        t.torsion_structure = e.value("torsion_structure", std::vector<std::uint64_t>{});
        t.sha_order = opt_int_of(e, "sha_an");
        if (e.contains("generators")) t.generators = points_of(e.at("generators"));
        r.twists.push_back(t);
      }
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("malformed record: ") + e.what());
  }
}

void validate(const CurveRecord& r) {
  CurveQ c = r.curve();
  if (c.disc() == 0) fail(ErrorCode::InvalidArgument, r.label + ": singular model");
  if (r.conductor < 11) fail(ErrorCode::InvalidArgument, r.label + ": conductor below 11");
  for (const auto& P : r.generators)
    if (!on_curve(c, P)) fail(ErrorCode::InvalidArgument, r.label + ": generator off the curve");
  for (const auto& t : r.twists) {
    CurveQ tc = t.curve();
    if (tc.disc() == 0) fail(ErrorCode::InvalidArgument, r.label + ": singular twist");
    for (const auto& P : t.generators)
      if (!on_curve(tc, P)) fail(ErrorCode::InvalidArgument, r.label + ": twist generator off the curve");
  }
}

std::string kodaira_from_code(int code) {
  if (code == 1) return "I0";
  if (code == 2) return "II";
  if (code == 3) return "III";
  if (code == 4) return "IV";
  if (code > 4) return "I" + std::to_string(code - 4);
  if (code == -1) return "I0*";
  if (code == -2) return "II*";
  if (code == -3) return "III*";
  if (code == -4) return "IV*";
  if (code < -4) return "I" + std::to_string(-code - 4) + "*";
  fail(ErrorCode::InvalidArgument, "unknown Kodaira code " + std::to_string(code));
}

std::string LmfdbClient::get(const std::string& path) const {
  httplib::Client cli(opts_.base_url);
  cli.set_connection_timeout(opts_.timeout_seconds, 0);
  cli.set_read_timeout(opts_.timeout_seconds, 0);
  cli.set_follow_location(true);
  std::string last;
  for (int attempt = 0; attempt <= opts_.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(opts_.backoff_ms << (attempt - 1)));
    auto res = cli.Get(path);
    if (!res) {
      last = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) return res->body;
    if (res->status == 404) fail(ErrorCode::NotFound, path);
    last = "HTTP " + std::to_string(res->status);
    if (res->status != 429 && res->status < 500) break;
  }
  fail(ErrorCode::NetworkUnavailable, opts_.base_url + path + ": " + last);
}

CurveRecord LmfdbClient::fetch(const std::string& label) const {
  ojson curves = ojson::parse(get("/api/ec_curvedata/?Clabel=" + label + "&_format=json"));
  if (!curves.contains("data") || curves["data"].empty()) fail(ErrorCode::NotFound, "no curve with label " + label);
  const ojson& c = curves["data"][0];
  CurveRecord r;
  r.label = label;
  r.source = "LMFDB " + opts_.base_url;
  r.ainvs = ainvs_of(c.at("ainvs"));
  r.conductor = int_of(c.at("conductor"));
  r.rank = c.at("rank").get<int>();
  r.torsion_structure = c.value("torsion_structure", std::vector<std::uint64_t>{});
  if (c.contains("sha") && !c["sha"].is_null()) r.sha_order = int_of(c["sha"]);
  if (c.contains("nonmax_primes") && !c["nonmax_primes"].is_null())
    r.nonmaximal_primes = c["nonmax_primes"].get<std::vector<std::uint64_t>>();
  std::string lmfdb_label = c.value("lmfdb_label", label);
  ojson local = ojson::parse(get("/api/ec_localdata/?lmfdb_label=" + lmfdb_label + "&_format=json"));
  for (const auto& e : local.value("data", ojson::array())) {
    LocalRecord l;
    l.prime = e.at("prime").get<std::uint64_t>();
    l.tamagawa = e.at("tamagawa_number").get<std::uint64_t>();
    l.kodaira = kodaira_from_code(e.at("kodaira_symbol").get<int>());
    l.conductor_exponent = e.at("conductor_valuation").get<int>();
    l.disc_valuation = e.at("discriminant_valuation").get<int>();
    r.local_data.push_back(l);
  }
  return r;
}

StoreOptions StoreOptions::from_env() {
  StoreOptions o;
  const char* f = std::getenv("ANTICYC_FIXTURES_DIR");
  o.fixtures_dir = f ? f : ANTICYC_FIXTURES_DIR;
  if (const char* c = std::getenv("ANTICYC_CACHE_DIR")) o.cache_dir = c;
  if (const char* u = std::getenv("ANTICYC_LMFDB_URL")) o.client.base_url = u;
  if (const char* t = std::getenv("ANTICYC_TIMEOUT")) o.client.timeout_seconds = std::atoi(t);
  return o;
}

CurveStore::CurveStore(StoreOptions opts) : opts_(std::move(opts)) {}

unsigned CurveStore::network_fetches() const { return network_fetches_; }

std::vector<std::string> CurveStore::fixture_labels() const {
  std::vector<std::string> out;
  if (opts_.fixtures_dir.empty() || !fs::is_directory(opts_.fixtures_dir)) return out;
  for (const auto& e : fs::directory_iterator(opts_.fixtures_dir))
    if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

void CurveStore::store_cache(const CurveRecord& r) {
  if (opts_.cache_dir.empty()) return;
  fs::create_directories(opts_.cache_dir);
  fs::path target = fs::path(opts_.cache_dir) / (r.label + ".json");
  if (fs::exists(target)) return;  // append-only
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << serialize(r);
  }
  fs::rename(tmp, target);
}

CurveRecord CurveStore::fetch_curve(const std::string& label) {
  std::lock_guard<std::mutex> lock(mu_);
  if (auto it = memory_.find(label); it != memory_.end()) return it->second;
  if (!is_cremona_label(label)) fail(ErrorCode::NotFound, "'" + label + "' is not a curve label");
  std::optional<CurveRecord> rec;
  bool from_cache = false;
  for (const std::string& dir : {opts_.cache_dir, opts_.fixtures_dir}) {
    if (dir.empty()) continue;
    fs::path p = fs::path(dir) / (label + ".json");
    if (fs::exists(p)) {
      rec = parse_record(read_file(p));
      from_cache = dir == opts_.cache_dir;
      break;
    }
  }
  if (!rec) {
    if (opts_.offline) fail(ErrorCode::NetworkUnavailable, "offline and " + label + " is neither cached nor bundled");
    rec = LmfdbClient(opts_.client).fetch(label);
    ++network_fetches_;
  }
  validate(*rec);
  if (!from_cache) store_cache(*rec);
  memory_[label] = *rec;
  return *rec;
}

int CurveStore::rank_over_K(const TwistKey& key) {
  CurveRecord r = fetch_curve(key.base_label);
  const TwistRecord* t = r.twist(key.d);
  if (!t) fail(ErrorCode::MissingTwist, key.base_label + " has no twist record for d=" + std::to_string(key.d));
  return r.rank + t->rank;
}

Int CurveStore::sha_over_K_odd_part(const TwistKey& key, std::uint64_t p) {
  if (p % 2 == 0) fail(ErrorCode::InvalidArgument, "p must be odd");
  CurveRecord r = fetch_curve(key.base_label);
  const TwistRecord* t = r.twist(key.d);
  if (!t) fail(ErrorCode::MissingTwist, key.base_label + " has no twist record for d=" + std::to_string(key.d));
  if (r.rank + t->rank != 0) fail(ErrorCode::MissingData, "rank over K is positive; Sha order not available");
  if (!r.sha_order || !t->sha_order) fail(ErrorCode::MissingData, "Sha order not ingested");
  return p_part(*r.sha_order * *t->sha_order, p);
}

KData CurveStore::kdata(const std::string& label, std::int64_t d) {
  CurveRecord r = fetch_curve(label);
  const TwistRecord* t = r.twist(d);
  if (!t) fail(ErrorCode::MissingTwist, label + " has no twist record for d=" + std::to_string(d));
  KData k;
  k.rank_Q = r.rank;
  k.rank_twist = t->rank;
  k.sha_Q = r.sha_order;
  k.sha_twist = t->sha_order;
  k.torsion_Q = r.torsion_structure;
  k.torsion_twist = t->torsion_structure;
  k.source = "ingested (" + r.source + ")";
  return k;
}

ImageData CurveStore::image_data(const std::string& label) {
  ImageData img;
  img.nonmaximal_primes = fetch_curve(label).nonmaximal_primes;
  return img;
}

HeegnerInput CurveStore::heegner_input(const std::string& label, std::int64_t d, std::uint64_t p) {
  CurveRecord r = fetch_curve(label);
  const TwistRecord* t = r.twist(d);
  if (!t) fail(ErrorCode::MissingTwist, label + " has no twist record for d=" + std::to_string(d));
  if (r.rank == 1 && !r.generators.empty())
    return make_heegner_input(r.curve(), static_cast<std::uint64_t>(d), p, r.curve(), r.generators[0], false);
  if (t->rank == 1 && !t->generators.empty())
    return make_heegner_input(r.curve(), static_cast<std::uint64_t>(d), p, t->curve(), t->generators[0], true);
  fail(ErrorCode::MissingGenerator, label + ", d=" + std::to_string(d) + ": no rank-one generator ingested");
}

ShaRow sha_frequency_row(CurveStore& store, const std::string& label, std::uint64_t dmin, std::uint64_t dmax) {
  CurveRecord r = store.fetch_curve(label);
  ShaRow row;
  row.label = label;
  for (auto d : primes_in(dmin, dmax)) {
    if (mod_u64(r.conductor, d) == 0) continue;
    const TwistRecord* t = r.twist(static_cast<std::int64_t>(d));
    if (!t) {
      row.missing.push_back(d);
      continue;
    }
    if (r.rank + t->rank != 0) continue;
    row.eligible.push_back(d);
    if (!r.sha_order || !t->sha_order) {
      row.missing.push_back(d);
      continue;
    }
    Int sha = *r.sha_order * *t->sha_order;
    while (sha % 2 == 0) sha /= 2;
    row.sha_odd[d] = sha;
    if (sha % 3 == 0) ++row.with3;
    if (sha % 5 == 0) ++row.with5;
    Int rest = sha;
    while (rest % 3 == 0) rest /= 3;
    while (rest % 5 == 0) rest /= 5;
    if (rest > 1) ++row.with_ge7;
  }
  return row;
}

}  // namespace anticyc
