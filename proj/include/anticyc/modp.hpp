// Reduction mod p, exhaustive point counts, anomalous primes.
#pragma once

#include <cstdint>
#include <vector>

#include "anticyc/curve.hpp"
#include "anticyc/quadfield.hpp"

namespace anticyc {

struct TraceRecord {
  std::uint64_t p;
  std::int64_t a_p;
  std::uint64_t n_p;
  bool ordinary;
};

TraceRecord make_trace(std::uint64_t p, std::int64_t a_p);

/// Quadratic character table mod an odd prime p.
class QrTable {
 public:
  explicit QrTable(std::uint64_t p);
  std::uint64_t p() const { return p_; }
  int chi(std::uint64_t v) const { return chi_[v]; }

 private:
  std::uint64_t p_;
  std::vector<signed char> chi_;
};

/// Counts #E(F_p) for y^2 = x^3 + a x + b over F_p, affine points plus O.
/// The pair must be nonsingular mod p.
std::uint64_t count_short(const QrTable& qr, std::uint64_t a, std::uint64_t b);

TraceRecord count_points_fp(const CurveQ& curve, std::uint64_t p);
/// Direct (x,y) double loop; valid for every prime of good reduction, including 2 and 3.
TraceRecord count_points_naive(const CurveQ& curve, std::uint64_t p);
/// Dispatches to the table method for p >= 5 and the double loop below.
TraceRecord trace_at(const CurveQ& curve, std::uint64_t p);

/// (p+1-a_p)(p+1+a_p)
Int count_points_fp2(const TraceRecord& tr);

bool is_Q_anomalous(const TraceRecord& tr);
bool is_K_anomalous(const TraceRecord& tr, SplittingType split);

struct AnomalousRecord {
  std::uint64_t p;
  std::int64_t a_p;
  bool q_anomalous;
  bool k_anomalous;
};

struct AnomalousScan {
  std::vector<AnomalousRecord> records;
  std::vector<std::uint64_t> bad_primes;
  std::vector<std::uint64_t> ramified_primes;
};

AnomalousScan anomalous_scan(const CurveQ& curve, std::uint64_t d, std::uint64_t pmax, unsigned jobs = 1);

/// Number of good primes 5 <= p <= x with a_p = t.
std::uint64_t lang_trotter_counts(const CurveQ& curve, std::int64_t t, std::uint64_t x);

}  // namespace anticyc
