#include "anticyc/arithstat.hpp"

#include <cmath>
#include <vector>

#include "anticyc/curve.hpp"
#include "anticyc/errors.hpp"
#include "anticyc/local.hpp"
#include "anticyc/modp.hpp"
#include "anticyc/parallel.hpp"

namespace anticyc {

FamilyScanResult frak_S(std::uint64_t p, unsigned jobs) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be prime");
  if (p < 7) fail(ErrorCode::SmallPrime, "frak_S needs p >= 7");
  if (p > 1000) fail(ErrorCode::BoundExceeded, "frak_S is limited to p <= 1000");
  QrTable qr(p);
  struct Acc {
    std::uint64_t s = 0, t = 0, ns = 0;
  };
  std::vector<Acc> acc(block_count(p, jobs));
  parallel_blocks(p, jobs, [&](unsigned k, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t a = lo; a < hi; ++a) {
      std::uint64_t a3 = mulmod(4, mulmod(mulmod(a, a, p), a, p), p);
      for (std::uint64_t b = 0; b < p; ++b) {
        if ((a3 + mulmod(27, mulmod(b, b, p), p)) % p == 0) continue;
        ++acc[k].ns;
        std::uint64_t n = count_short(qr, a, b);
        std::int64_t ap = static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(n);
        bool by_order = n % p == 0;
        if (by_order != (ap == 1)) fail(ErrorCode::Internal, "p | #E(F_p) and a_p = 1 disagree");
        if (by_order) ++acc[k].s;
        if (n % p == 0 || n % p == 2) ++acc[k].t;
      }
    }
  });
  FamilyScanResult r;
  r.p = p;
  for (const auto& a : acc) {
    r.frak_S += a.s;
    r.frak_T += a.t;
    r.nonsingular += a.ns;
  }
  r.ratio_S = Rat(Int(static_cast<unsigned long>(r.frak_S)), Int(static_cast<unsigned long>(p)) * p);
  r.ratio_S.canonicalize();
  return r;
}

std::uint64_t b_of_p(std::uint64_t p, const QuadField& K) {
  FamilyScanResult r = frak_S(p);
  return splitting(p, K) == SplittingType::Inert ? r.frak_T : r.frak_S;
}

Approx cohen_lenstra_f0(std::uint64_t p, unsigned terms) {
  if (terms < 1) fail(ErrorCode::InvalidArgument, "terms >= 1 required");
  if (p < 2) fail(ErrorCode::InvalidArgument, "p must be prime");
  long double prod = 1, pp = static_cast<long double>(p);
  for (unsigned j = 1; j <= terms; ++j) prod *= 1 - std::pow(pp, 1.0L - 2.0L * j);
  return {1 - prod, 2 * std::pow(pp, 1.0L - 2.0L * (terms + 1))};
}

Approx zeta(double s) {
  if (!(s > 1)) fail(ErrorCode::InvalidArgument, "zeta needs s > 1");
  const std::uint64_t M = s < 3 ? 1000000 : 20000;
  long double sum = 0, ls = s;
  for (std::uint64_t n = M; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -ls);
  long double hi = std::pow(static_cast<long double>(M), 1 - ls) / (ls - 1);
  long double lo = std::pow(static_cast<long double>(M + 1), 1 - ls) / (ls - 1);
  return {sum + (hi + lo) / 2, (hi - lo) / 2};
}

TamagawaBound tamagawa_density_bound(std::uint64_t p, const std::optional<QuadField>& K, std::uint64_t lmax) {
  if (lmax < 5) fail(ErrorCode::InvalidArgument, "lmax >= 5 required");
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be prime");
  TamagawaBound b{0, 0, 0};
  long double lp = static_cast<long double>(p);
  for (auto l : primes_in(5, lmax)) {
    if (l == p) continue;
    if (K && splitting(l, *K) != SplittingType::Split) continue;
    long double L = static_cast<long double>(l);
    long double Lp = std::pow(L, lp);
    b.partial_sum += (L - 1) * (L - 1) / (L * L * (Lp - 1));
    b.dominating += 1 / Lp;
  }
  b.zeta_bound = zeta(static_cast<double>(p)).value - 1;
  return b;
}

long double E3_bound(std::uint64_t p, const std::optional<QuadField>& K, unsigned jobs) {
  FamilyScanResult r = frak_S(p, jobs);
  std::uint64_t num = K && splitting(p, *K) == SplittingType::Inert ? r.frak_T : r.frak_S;
  long double pp = static_cast<long double>(p);
  return zeta(10).value * static_cast<long double>(num) / (pp * pp);
}

namespace {

int vsmall(std::uint64_t n, std::uint64_t l) {
  int v = 0;
  while (n % l == 0) {
    n /= l;
    ++v;
  }
  return v;
}

bool is_In_divisible(const CurveQ& c, std::uint64_t l, std::uint64_t p) {
  LocalData ld = tate_algorithm(c, l, false);
  return ld.type.kind == KodairaKind::In && ld.type.n % static_cast<int>(p) == 0;
}

}  // namespace

HeightScanCounts height_scan(std::uint64_t x, std::uint64_t p, const std::optional<QuadField>& K, unsigned jobs) {
  if (p < 5 || !is_prime(p)) fail(ErrorCode::InvalidArgument, "height_scan needs a prime p >= 5");
  if (x > 100000000ULL) fail(ErrorCode::BoundExceeded, "height_scan is limited to x <= 10^8");
  HeightScanCounts total;
  if (x == 0) return total;

  QrTable qr(p);
  std::vector<std::uint64_t> ntab(p * p, 0);
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b)
      if ((mulmod(4, mulmod(mulmod(a, a, p), a, p), p) + mulmod(27, mulmod(b, b, p), p)) % p != 0)
        ntab[a * p + b] = count_short(qr, a, b);
  bool inert_p = K && splitting(p, *K) == SplittingType::Inert;

  // |Delta| <= 16 * 31 * x, and l^p | Delta is needed for p | c_l at l >= 5.
  long double dmax = 496.0L * static_cast<long double>(x);
  std::uint64_t lmax = static_cast<std::uint64_t>(std::pow(dmax, 1.0L / static_cast<long double>(p))) + 1;
  std::vector<std::uint64_t> ells;
  for (auto l : primes_in(5, lmax)) {
    if (l == p || (K && splitting(l, *K) != SplittingType::Split)) continue;
    ells.push_back(l);
  }

  std::int64_t am = a_bound(x);
  std::uint64_t span = static_cast<std::uint64_t>(2 * am + 1);
  std::vector<HeightScanCounts> parts(block_count(span, jobs));
  parallel_blocks(span, jobs, [&](unsigned k, std::uint64_t lo, std::uint64_t hi) {
    HeightScanCounts& c = parts[k];
    std::int64_t a_lo = -am + static_cast<std::int64_t>(lo), a_hi = -am + static_cast<std::int64_t>(hi) - 1;
    for_each_short_model(x, a_lo, a_hi, [&](const ShortPair& s) {
      ++c.total;
      __int128 inner = 4 * static_cast<__int128>(s.A) * s.A * s.A + 27 * static_cast<__int128>(s.B) * s.B;
      std::uint64_t absD = static_cast<std::uint64_t>((inner < 0 ? -inner : inner) * 16);
      CurveQ curve;
      bool built = false;
      auto get = [&]() -> const CurveQ& {
        if (!built) {
          curve = CurveQ::short_form(from_i64(s.A), from_i64(s.B));
          built = true;
        }
        return curve;
      };
      for (std::uint64_t l : {2ULL, 3ULL}) {
        if (vsmall(absD, l) >= static_cast<int>(p) && is_In_divisible(get(), l, p)) {
          ++c.dagger_excluded;
          return;
        }
      }
      bool e2 = false;
      for (auto l : ells) {
        int v = vsmall(absD, l);
        if (v < static_cast<int>(p) || v % static_cast<int>(p) != 0) continue;
        if (s.A % static_cast<std::int64_t>(l) == 0) continue;  // additive
        if (tamagawa_p_part(tate_algorithm(get(), l), p) > 1) {
          e2 = true;
          break;
        }
      }
      if (e2) ++c.e2;
      std::uint64_t a = static_cast<std::uint64_t>(((s.A % static_cast<std::int64_t>(p)) + p) % p);
      std::uint64_t b = static_cast<std::uint64_t>(((s.B % static_cast<std::int64_t>(p)) + p) % p);
      std::uint64_t n = ntab[a * p + b];
      if (n != 0) {
        std::uint64_t r = n % p;
        if (r == 0 || (inert_p && r == 2)) ++c.e3;
      }
    });
  });
  for (const auto& c : parts) {
    total.total += c.total;
    total.e2 += c.e2;
    total.e3 += c.e3;
    total.dagger_excluded += c.dagger_excluded;
  }
  return total;
}

}  // namespace anticyc
