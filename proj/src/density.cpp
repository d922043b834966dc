#include "anticyc/density.hpp"

#include <algorithm>

#include "anticyc/errors.hpp"
#include "anticyc/parallel.hpp"

namespace anticyc {

std::pair<Int, Int> n_plus_minus(const CurveQ& curve, const QuadField& K) {
  GlobalReduction g = global_reduction(curve);
  if (!is_squarefree(g.conductor)) fail(ErrorCode::InvalidArgument, "conductor is not squarefree");
  Int plus = 1, minus = 1;
  for (const auto& ld : g.local) {
    switch (splitting(ld.ell, K)) {
      case SplittingType::Split: plus *= static_cast<unsigned long>(ld.ell); break;
      case SplittingType::Inert: minus *= static_cast<unsigned long>(ld.ell); break;
      case SplittingType::Ramified:
        fail(ErrorCode::RamifiedBadPrime, std::to_string(ld.ell) + " ramifies in " + K.str());
    }
  }
  return {plus, minus};
}

bool CRContext::exceptional(std::uint64_t q) const {
  for (unsigned i = 0; i < k; ++i)
    if (bad_primes[i] == q) return true;
  return false;
}

CRContext compute_k(const CurveQ& curve, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "p must be prime");
  GlobalReduction g = global_reduction(curve);
  CRContext ctx;
  ctx.curve = curve;
  ctx.p = p;
  ctx.N = g.conductor;
  std::vector<LocalData> exc, rest;
  for (const auto& ld : g.local) {
    if (ld.v_cond != 1)
      fail(ErrorCode::AdditiveBadPrime, "additive reduction at " + std::to_string(ld.ell) + " (" + ld.type.symbol() + ")");
    bool pm1 = ld.ell % p == 1 || ld.ell % p == p - 1;
    if (pm1 && ld.v_disc % static_cast<int>(p) == 0)
      exc.push_back(ld);
    else
      rest.push_back(ld);
  }
  ctx.k = exc.size();
  ctx.t = exc.size() + rest.size();
  for (auto* group : {&exc, &rest})
    for (const auto& ld : *group) {
      ctx.bad_primes.push_back(ld.ell);
      ctx.local.push_back(ld);
    }
  if (ctx.t == 0) fail(ErrorCode::InvalidArgument, "curve has good reduction everywhere");
  return ctx;
}

OmegaSubset OmegaSubset::make(const CRContext& ctx, std::vector<std::uint64_t> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (auto q : primes) {
    if (std::find(ctx.bad_primes.begin(), ctx.bad_primes.end(), q) == ctx.bad_primes.end())
      fail(ErrorCode::InvalidArgument, std::to_string(q) + " does not divide N");
    if (ctx.exceptional(q)) fail(ErrorCode::InvalidArgument, std::to_string(q) + " is one of r_1..r_k");
  }
  OmegaSubset o;
  o.primes_ = std::move(primes);
  return o;
}

DensityResult delta_S(const CRContext& ctx) {
  if (ctx.k >= ctx.t) fail(ErrorCode::HypothesisFailed, "k < omega(N) fails");
  DensityResult r;
  r.delta = Rat(1, ipow(2, ctx.k + 1));
  r.n_count = ipow(2, ctx.t - ctx.k - 1);
  r.delta_omega = Rat(1, ipow(2, ctx.t));
  return r;
}

std::vector<OmegaSubset> admissible_omegas(const CRContext& ctx) {
  unsigned free = ctx.t - ctx.k;
  if (free > 20) fail(ErrorCode::BoundExceeded, "too many subsets to enumerate");
  std::vector<OmegaSubset> out;
  for (std::uint64_t mask = 0; mask < (1ULL << free); ++mask) {
    if (__builtin_popcountll(mask) % 2 == 0) continue;
    std::vector<std::uint64_t> ps;
    for (unsigned i = 0; i < free; ++i)
      if (mask >> i & 1) ps.push_back(ctx.bad_primes[ctx.k + i]);
    out.push_back(OmegaSubset::make(ctx, ps));
  }
  return out;
}

std::uint64_t residue_modulus(const CRContext& ctx) {
  std::uint64_t N = to_u64(ctx.N);
  return N % 2 ? N : 4 * N;
}

namespace {
// +1 split, -1 inert, 0 ramified: the behaviour of q in Q(sqrt(-r)) for r in the class.
int class_symbol(std::uint64_t r, std::uint64_t q) {
  if (q != 2) return kronecker(-static_cast<std::int64_t>(r % q), static_cast<std::int64_t>(q));
  if (r % 4 != 3) return 0;
  return r % 8 == 7 ? 1 : -1;
}
}  // namespace

std::set<std::uint64_t> residue_classes(const CRContext& ctx, const std::vector<std::uint64_t>& omega) {
  for (auto q : omega)
    if (std::find(ctx.bad_primes.begin(), ctx.bad_primes.end(), q) == ctx.bad_primes.end())
      fail(ErrorCode::InvalidArgument, std::to_string(q) + " does not divide N");
  std::uint64_t M = residue_modulus(ctx);
  std::set<std::uint64_t> out;
  for (std::uint64_t r = 1; r < M; ++r) {
    bool ok = true;
    for (auto q : ctx.bad_primes) {
      int want = std::find(omega.begin(), omega.end(), q) != omega.end() ? -1 : 1;
      if (class_symbol(r, q) != want) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(r);
  }
  // Odd N: phi(N)/2^t. Even N: classes mod 4N, half of them ramify 2.
  Int expect = euler_phi(Int(static_cast<unsigned long>(M))) / ipow(2, ctx.t + (M != to_u64(ctx.N)));
  if (Int(static_cast<unsigned long>(out.size())) != expect)
    fail(ErrorCode::Internal, "|r_Omega| differs from the expected count");
  return out;
}

std::set<std::uint64_t> residue_classes(const CRContext& ctx, const OmegaSubset& omega) {
  return residue_classes(ctx, omega.primes());
}

bool in_S(const CRContext& ctx, std::uint64_t d) {
  QuadField K(d);
  unsigned omega = 0;
  for (auto q : ctx.bad_primes) {
    SplittingType s = splitting(q, K);
    if (s == SplittingType::Ramified) return false;
    if (s == SplittingType::Inert) {
      if (ctx.exceptional(q)) return false;
      ++omega;
    }
  }
  return omega % 2 == 1;
}

CRScan cr_scan(const CRContext& ctx, std::uint64_t dmax, unsigned jobs) {
  std::vector<std::uint64_t> ds;
  for (auto d : primes_up_to(dmax))
    if (d != ctx.p && mod_u64(ctx.N, d) != 0) ds.push_back(d);
  unsigned w = block_count(ds.size(), jobs);
  std::vector<std::uint64_t> hits(w, 0);
  parallel_blocks(ds.size(), jobs, [&](unsigned k, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i)
      if (in_S(ctx, ds[i])) ++hits[k];
  });
  CRScan out;
  out.primes = ds.size();
  for (auto h : hits) out.in_S += h;
  if (out.primes > 0) {
    out.density = Rat(static_cast<unsigned long>(out.in_S), static_cast<unsigned long>(out.primes));
    out.density->canonicalize();
  }
  return out;
}

InertClassSets inert_class_sets(std::uint64_t q) {
  if (q < 3 || !is_prime(q)) fail(ErrorCode::InvalidArgument, "q must be an odd prime");
  InertClassSets s;
  s.q = q;
  s.modulus = 4 * q;
  for (std::uint64_t d = 1; d < s.modulus; d += 2) {
    if (d % q == 0) continue;
    if (kronecker(static_cast<std::int64_t>(q), static_cast<std::int64_t>(d)) == -1) s.jacobi.insert(d);
    // D_K = -d or -4d; (D_K/q) = (-d/q) since 4 is a square
    if (kronecker(-static_cast<std::int64_t>(d), static_cast<std::int64_t>(q)) == -1) s.discriminant.insert(d);
  }
  std::set_symmetric_difference(s.jacobi.begin(), s.jacobi.end(), s.discriminant.begin(), s.discriminant.end(),
                                std::inserter(s.discrepancy, s.discrepancy.begin()));
  return s;
}

}  // namespace anticyc
