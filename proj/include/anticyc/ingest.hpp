// Curve records: fixture bundle, on-disk cache and an LMFDB-style HTTP client.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "anticyc/curve.hpp"
#include "anticyc/indefinite.hpp"
#include "anticyc/iwasawa.hpp"

namespace anticyc {

constexpr int kRecordFormatVersion = 1;

struct LocalRecord {
  std::uint64_t prime = 0;
  int conductor_exponent = 0;
  std::string kodaira;
  std::uint64_t tamagawa = 1;
  int disc_valuation = 0;
};

struct TwistRecord {
  std::int64_t d = 0;     // K = Q(sqrt(-d))
  std::int64_t disc = 0;  // fundamental discriminant D of K; the twist is E^(D)
  std::array<Int, 5> ainvs;
  Int conductor;
  int rank = 0;
  std::vector<std::uint64_t> torsion_structure;
  std::optional<Int> sha_order;
  std::vector<RatPoint> generators;

  CurveQ curve() const { return CurveQ::from_ainvs(ainvs); }
};

struct CurveRecord {
  int format_version = kRecordFormatVersion;
  std::string label;
  std::string source;
  std::array<Int, 5> ainvs;
  Int conductor;
  int rank = 0;
  std::vector<std::uint64_t> torsion_structure;
  std::vector<LocalRecord> local_data;
  std::optional<Int> sha_order;
  std::optional<std::vector<std::uint64_t>> nonmaximal_primes;
  std::vector<RatPoint> generators;
  std::vector<TwistRecord> twists;

  CurveQ curve() const { return CurveQ::from_ainvs(ainvs); }
  std::map<std::uint64_t, std::uint64_t> tamagawa() const;
  const TwistRecord* twist(std::int64_t d) const;
};

/// Deterministic text form (JSON, fixed key order, one-space indent).
std::string serialize(const CurveRecord& r);
CurveRecord parse_record(const std::string& text);
/// Checks the record invariants; throws InvalidArgument.
void validate(const CurveRecord& r);

bool is_cremona_label(const std::string& label);

struct TwistKey {
  std::string base_label;
  std::int64_t d = 0;
};

struct ClientOptions {
  std::string base_url = "https://www.lmfdb.org";
  int timeout_seconds = 10;
  int max_retries = 3;
  int backoff_ms = 200;
};

/// Read-only client for LMFDB-style endpoints.
class LmfdbClient {
 public:
  explicit LmfdbClient(ClientOptions opts) : opts_(std::move(opts)) {}
  CurveRecord fetch(const std::string& label) const;

 private:
  std::string get(const std::string& path) const;
  ClientOptions opts_;
};

/// Decodes the integer Kodaira convention used by PARI and the LMFDB.
std::string kodaira_from_code(int code);

struct StoreOptions {
  std::string fixtures_dir;
  std::string cache_dir;  // empty: no disk cache
  bool offline = false;
  ClientOptions client;

  /// Defaults from ANTICYC_FIXTURES_DIR, ANTICYC_CACHE_DIR, ANTICYC_LMFDB_URL, ANTICYC_TIMEOUT.
  static StoreOptions from_env();
};

class CurveStore {
 public:
  explicit CurveStore(StoreOptions opts);

  /// Memory, then disk cache, then fixtures, then network.
  CurveRecord fetch_curve(const std::string& label);
  std::vector<std::string> fixture_labels() const;
  unsigned network_fetches() const;

  int rank_over_K(const TwistKey& key);
  Int sha_over_K_odd_part(const TwistKey& key, std::uint64_t p);
  KData kdata(const std::string& label, std::int64_t d);
  ImageData image_data(const std::string& label);
  HeegnerInput heegner_input(const std::string& label, std::int64_t d, std::uint64_t p);

 private:
  void store_cache(const CurveRecord& r);

  StoreOptions opts_;
  std::mutex mu_;
  std::map<std::string, CurveRecord> memory_;
  unsigned network_fetches_ = 0;
};

struct ShaRow {
  std::string label;
  std::vector<std::uint64_t> eligible;  // primes d with rank E(K^d) = 0
  std::map<std::uint64_t, Int> sha_odd;  // d -> odd part of #Sha(E/K^d)
  unsigned with3 = 0, with5 = 0, with_ge7 = 0;
  std::vector<std::uint64_t> missing;    // primes d without a twist record
};

/// Odd Sha frequencies over K^d for primes dmin <= d <= dmax with d coprime to N.
ShaRow sha_frequency_row(CurveStore& store, const std::string& label, std::uint64_t dmin = 5, std::uint64_t dmax = 150);

}  // namespace anticyc
