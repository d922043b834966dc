#include "anticyc/modp.hpp"

#include <cmath>

#include "anticyc/errors.hpp"
#include "anticyc/parallel.hpp"

namespace anticyc {

TraceRecord make_trace(std::uint64_t p, std::int64_t a_p) {
  long double bound = 2 * std::sqrt(static_cast<long double>(p));
  if (static_cast<long double>(a_p) * a_p > bound * bound + 1e-9L)
    fail(ErrorCode::Internal, "Hasse bound violated at p=" + std::to_string(p));
  std::int64_t ap_mod = ((a_p % static_cast<std::int64_t>(p)) + p) % p;
  return TraceRecord{p, a_p, static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 - a_p), ap_mod != 0};
}

QrTable::QrTable(std::uint64_t p) : p_(p), chi_(p, -1) {
  if (p < 3 || !is_prime(p)) fail(ErrorCode::InvalidArgument, "QrTable needs an odd prime");
  chi_[0] = 0;
  for (std::uint64_t y = 1; y <= p / 2; ++y) chi_[mulmod(y, y, p)] = 1;
}

std::uint64_t count_short(const QrTable& qr, std::uint64_t a, std::uint64_t b) {
  std::uint64_t p = qr.p();
  std::int64_t total = static_cast<std::int64_t>(p) + 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t f = (mulmod(mulmod(x, x, p) + a, x, p) + b) % p;
    total += qr.chi(f);
  }
  return static_cast<std::uint64_t>(total);
}

TraceRecord count_points_fp(const CurveQ& curve, std::uint64_t p) {
  if (p < 5) fail(ErrorCode::SmallPrime, "count_points_fp needs p >= 5");
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (mod_u64(curve.disc(), p) == 0) fail(ErrorCode::BadReduction, "p=" + std::to_string(p) + " divides the discriminant");
  QrTable qr(p);
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  std::uint64_t b2 = mod_u64(curve.b2(), p), b4 = mod_u64(2 * curve.b4(), p), b6 = mod_u64(curve.b6(), p);
  std::int64_t total = static_cast<std::int64_t>(p) + 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t f = (mulmod((mulmod(4, x, p) + b2) % p, x, p) + b4) % p;
    f = (mulmod(f, x, p) + b6) % p;
    total += qr.chi(f);
  }
  return make_trace(p, static_cast<std::int64_t>(p) + 1 - total);
}

TraceRecord count_points_naive(const CurveQ& curve, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (mod_u64(curve.disc(), p) == 0) fail(ErrorCode::BadReduction, "p=" + std::to_string(p) + " divides the discriminant");
  std::uint64_t a[5] = {mod_u64(curve.a1, p), mod_u64(curve.a2, p), mod_u64(curve.a3, p), mod_u64(curve.a4, p),
                        mod_u64(curve.a6, p)};
  std::uint64_t n = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t rhs = (mulmod((mulmod((x + a[1]) % p, x, p) + a[3]) % p, x, p) + a[4]) % p;
    for (std::uint64_t y = 0; y < p; ++y) {
      std::uint64_t lhs = (mulmod(y, y, p) + mulmod(mulmod(a[0], x, p), y, p) + mulmod(a[2], y, p)) % p;
      if (lhs == rhs) ++n;
    }
  }
  return make_trace(p, static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(n));
}

TraceRecord trace_at(const CurveQ& curve, std::uint64_t p) {
  return p >= 5 ? count_points_fp(curve, p) : count_points_naive(curve, p);
}

Int count_points_fp2(const TraceRecord& tr) {
  Int p1 = Int(static_cast<unsigned long>(tr.p)) + 1, a = from_i64(tr.a_p);
  return (p1 - a) * (p1 + a);
}

bool is_Q_anomalous(const TraceRecord& tr) {
  if (tr.p < 7) fail(ErrorCode::SmallPrime, "a_p = 1 criterion needs p >= 7; test p | n_p directly");
  return tr.a_p == 1;
}

bool is_K_anomalous(const TraceRecord& tr, SplittingType split) {
  if (tr.p < 7) fail(ErrorCode::SmallPrime, "K-anomalous criterion needs p >= 7");
  if (split == SplittingType::Inert) return tr.a_p == 1 || tr.a_p == -1;
  return tr.a_p == 1;
}

AnomalousScan anomalous_scan(const CurveQ& curve, std::uint64_t d, std::uint64_t pmax, unsigned jobs) {
  QuadField K(d);
  Int D = curve.disc();
  if (D == 0) fail(ErrorCode::InvalidArgument, "singular curve");
  AnomalousScan out;
  std::vector<std::uint64_t> todo;
  for (auto p : primes_in(7, pmax)) {
    if (mod_u64(D, p) == 0)
      out.bad_primes.push_back(p);
    else if (d % p == 0)
      out.ramified_primes.push_back(p);
    else
      todo.push_back(p);
  }
  unsigned w = block_count(todo.size(), jobs);
  std::vector<std::vector<AnomalousRecord>> parts(w);
  parallel_blocks(todo.size(), jobs, [&](unsigned k, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      TraceRecord tr = count_points_fp(curve, todo[i]);
      parts[k].push_back({tr.p, tr.a_p, is_Q_anomalous(tr), is_K_anomalous(tr, splitting(tr.p, K))});
    }
  });
  for (auto& part : parts) out.records.insert(out.records.end(), part.begin(), part.end());
  return out;
}

std::uint64_t lang_trotter_counts(const CurveQ& curve, std::int64_t t, std::uint64_t x) {
  Int D = curve.disc();
  std::uint64_t n = 0;
  for (auto p : primes_in(5, x)) {
    if (mod_u64(D, p) == 0) continue;
    if (count_points_fp(curve, p).a_p == t) ++n;
  }
  return n;
}

}  // namespace anticyc
