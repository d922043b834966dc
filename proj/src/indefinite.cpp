#include "anticyc/indefinite.hpp"

#include <algorithm>
#include <cmath>

#include "anticyc/errors.hpp"
#include "anticyc/local.hpp"
#include "anticyc/modp.hpp"

namespace anticyc {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Computed: return "computed";
    case Provenance::Ingested: return "ingested";
    case Provenance::Heuristic: return "heuristic";
  }
  return "?";
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Undecided: return "undecided";
  }
  return "?";
}

namespace {

Tri tri(bool b) { return b ? Tri::True : Tri::False; }

bool is_square_mod(std::uint64_t v, std::uint64_t p) { return v == 0 || powmod(v, (p - 1) / 2, p) == 1; }

}  // namespace

bool residual_ramified_at(const CurveQ& curve, std::uint64_t ell, std::uint64_t p) {
  if (ell == p) fail(ErrorCode::InvalidArgument, "residual_ramified_at needs ell != p");
  LocalData ld = tate_algorithm(curve, ell);
  if (ld.v_cond != 1)
    fail(ErrorCode::AdditiveBadPrime, "reduction at " + std::to_string(ell) + " is " + ld.type.symbol() + ", not multiplicative");
  return ld.v_disc % static_cast<int>(p) != 0;
}

Tri surjectivity_test(const CurveQ& curve, std::uint64_t p, const ImageData& ingested, std::uint64_t sample_bound) {
  if (ingested.nonmaximal_primes) {
    const auto& v = *ingested.nonmaximal_primes;
    return std::find(v.begin(), v.end(), p) != v.end() ? Tri::False : Tri::True;
  }
  if (p < 5) return Tri::Undecided;
  Int D = curve.disc();
  bool nonsplit = false, split = false, exceptional = false;
  for (auto ell : primes_up_to(sample_bound)) {
    if (ell == p || mod_u64(D, ell) == 0) continue;
    TraceRecord tr = trace_at(curve, ell);
    std::uint64_t a = static_cast<std::uint64_t>(((tr.a_p % static_cast<std::int64_t>(p)) + p) % p);
    std::uint64_t l = ell % p;
    if (a == 0) continue;
    std::uint64_t s = (mulmod(a, a, p) + p - mulmod(4, l, p)) % p;
    if (s != 0) {
      if (is_square_mod(s, p))
        split = true;
      else
        nonsplit = true;
    }
    std::uint64_t u = mulmod(mulmod(a, a, p), powmod(l, p - 2, p), p);
    if (u != 0 && u != 1 && u != 2 && u != 4 && (mulmod(u, u, p) + 1 + 3 * (p - u)) % p != 0) exceptional = true;
    if (nonsplit && split && exceptional) return Tri::True;
  }
  return Tri::Undecided;
}

AdmissibilityReport admissible(const CurveQ& curve, const QuadField& K, std::uint64_t p, const ImageData& ingested) {
  GlobalReduction g = global_reduction(curve);
  const Int& N = g.conductor;
  if (!is_squarefree(N)) fail(ErrorCode::HypothesisFailed, "conductor " + N.get_str() + " is not squarefree");
  if (N <= 3) fail(ErrorCode::HypothesisFailed, "conductor must exceed 3");
  if (!unit_group_is_pm1(K)) fail(ErrorCode::HypothesisFailed, K.str() + " has units beyond +-1");

  AdmissibilityReport r;
  auto& c = r.conditions;
  SplittingType sp = splitting(p, K);
  c[0] = {tri(sp == SplittingType::Split), Provenance::Computed, std::string("p is ") + splitting_name(sp)};

  bool all_split = true;
  std::string bad;
  for (const auto& ld : g.local) {
    SplittingType s = splitting(ld.ell, K);
    if (s != SplittingType::Split) {
      all_split = false;
      bad += std::to_string(ld.ell) + " " + splitting_name(s) + "; ";
    }
  }
  c[1] = {tri(all_split), Provenance::Computed, all_split ? "all split" : bad};

  bool good = mod_u64(N, p) != 0;
  std::optional<TraceRecord> tr;
  if (good) tr = trace_at(curve, p);
  bool ordinary = good && tr->ordinary;
  c[2] = {tri(ordinary), Provenance::Computed,
          good ? "a_p = " + std::to_string(tr->a_p) : std::string("bad reduction at p")};

  Int prod = 6 * N * euler_phi(N) * static_cast<unsigned long>(K.class_number());
  bool coprime = mod_u64(prod, p) != 0;
  c[3] = {tri(coprime), Provenance::Computed, "h_K = " + std::to_string(K.class_number())};

  bool not_pm1 = false;
  if (good) {
    std::int64_t a = ((tr->a_p % static_cast<std::int64_t>(p)) + p) % p;
    not_pm1 = a != 1 && a != static_cast<std::int64_t>(p) - 1;
  }
  c[4] = {tri(not_pm1), Provenance::Computed, good ? "a_p mod p = " + std::to_string(((tr->a_p % static_cast<std::int64_t>(p)) + p) % p) : "bad reduction at p"};

  Tri surj = surjectivity_test(curve, p, ingested);
  Provenance sprov = ingested.nonmaximal_primes ? Provenance::Ingested
                     : surj == Tri::True        ? Provenance::Computed
                                                : Provenance::Heuristic;
  c[5] = {surj, sprov, ingested.nonmaximal_primes ? "non-maximal prime list" : "Frobenius sampling"};

  bool ram = true;
  std::string rdetail;
  for (const auto& ld : g.local) {
    if (ld.ell == p) {
      ram = false;
      rdetail += "p divides N; ";
      continue;
    }
    if (!residual_ramified_at(curve, ld.ell, p)) {
      ram = false;
      rdetail += "unramified at " + std::to_string(ld.ell) + "; ";
    }
  }
  c[6] = {tri(ram), Provenance::Computed, ram ? "p does not divide v_l(Delta) for l | N" : rdetail};

  r.admissible = std::all_of(c.begin(), c.end(), [](const Condition& x) { return x.value == Tri::True; });
  r.undecided = std::any_of(c.begin(), c.end(), [](const Condition& x) { return x.value == Tri::Undecided; });
  return r;
}

int PadicElement::valuation() const {
  if (is_zero) return precision;
  return anticyc::valuation(value, p);
}

HeegnerInput make_heegner_input(const CurveQ& curve, std::uint64_t d, std::uint64_t p, const CurveQ& model,
                                const RatPoint& P, bool on_twist) {
  if (P.infinity) fail(ErrorCode::MissingGenerator, "no point of infinite order supplied");
  if (!on_curve(model, P)) fail(ErrorCode::InvalidArgument, "point does not lie on " + model.str());
  if (curve.j_invariant() != model.j_invariant()) fail(ErrorCode::InvalidArgument, "model is not a twist of the curve");
  return HeegnerInput{curve, d, p, model, P, on_twist};
}

PadicElement formal_log(const CurveQ& model, const RatPoint& P, std::uint64_t p, int target) {
  if (target < 1) fail(ErrorCode::InvalidArgument, "target precision must be positive");
  if (!on_curve(model, P)) fail(ErrorCode::InvalidArgument, "point not on curve");
  if (P.infinity) fail(ErrorCode::PointAtInfinity, "P is the point at infinity");
  TraceRecord tr = trace_at(model, p);
  long m = static_cast<long>(tr.n_p);
  RatPoint Q = mul(model, P, m);
  if (Q.infinity) fail(ErrorCode::PointAtInfinity, "m P = O, so P is torsion");
  Rat z = -Q.x / Q.y;
  int v = valuation(z, p);
  if (v < 1) fail(ErrorCode::Internal, "m P is not in the kernel of reduction");
  int vm = valuation(Int(m), p);
  int work = target + vm;

  // smallest k0 with k v - log_p(k) >= work; k v - v_p(k) >= work for every k >= k0
  long double lp = std::log(static_cast<long double>(p));
  long kmax = 0;
  for (long k = 1;; ++k) {
    if (k * v - std::log(static_cast<long double>(k)) / lp >= work) break;
    kmax = k;
    if (k > 20000) fail(ErrorCode::PrecisionLoss, "series too long for the requested precision");
  }
  const Int M = ipow(p, work);
  auto md = [&](const Int& x) {
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
    return r;
  };
  auto inv = [&](const Int& x) {
    Int r, xx = md(x);
    if (mpz_invert(r.get_mpz_t(), xx.get_mpz_t(), M.get_mpz_t()) == 0) fail(ErrorCode::Internal, "non-unit inverse");
    return r;
  };

  // w(z) = sum s_n z^n, s_3 = 1; W2 = w^2, W3 = w^3
  std::size_t deg = static_cast<std::size_t>(std::max<long>(kmax, 4));
  std::vector<Int> s(deg + 1, Int(0)), W2(deg + 1, Int(0)), W3(deg + 1, Int(0));
  Int a1 = md(model.a1), a2 = md(model.a2), a3 = md(model.a3), a4 = md(model.a4), a6 = md(model.a6);
  for (std::size_t n = 3; n <= deg; ++n) {
    for (std::size_t i = 3; i + 3 <= n; ++i) W2[n] += s[i] * s[n - i];
    W2[n] = md(W2[n]);
    for (std::size_t i = 3; i + 6 <= n; ++i) W3[n] += s[i] * W2[n - i];
    W3[n] = md(W3[n]);
    Int v_n = (n == 3 ? Int(1) : Int(0)) + a1 * s[n - 1] + a2 * s[n - 2] + a3 * W2[n] + a4 * W2[n - 1] + a6 * W3[n];
    s[n] = md(v_n);
  }
  // omega = dz / (1 - a1 z - a2 z^2 - 2 a3 w - 2 a4 z w - 3 a6 w^2)
  std::vector<Int> Dz(deg + 1, Int(0)), c(deg + 1, Int(0));
  Dz[0] = 1;
  if (deg >= 1) Dz[1] = md(-a1);
  if (deg >= 2) Dz[2] = md(-a2);
  for (std::size_t n = 3; n <= deg; ++n) Dz[n] = md(-2 * a3 * s[n] - 2 * a4 * s[n - 1] - 3 * a6 * W2[n]);
  c[0] = 1;
  for (std::size_t n = 1; n <= deg; ++n) {
    Int acc = 0;
    for (std::size_t i = 1; i <= n; ++i) acc += Dz[i] * c[n - i];
    c[n] = md(-acc);
  }

  Int unum = z.get_num(), uden = z.get_den();
  if (v > 0)
    unum /= ipow(p, v);
  Int u = md(unum * inv(uden));
  Int L = 0, upow = 1;
  for (long k = 1; k <= kmax; ++k) {
    upow = md(upow * u);
    long kk = k;
    int e = 0;
    while (kk % static_cast<long>(p) == 0) {
      kk /= static_cast<long>(p);
      ++e;
    }
    long shift = k * v - e;
    if (shift >= work) continue;
    Int term = c[k - 1] * ipow(p, shift) * upow * inv(Int(kk));
    L = md(L + term);
  }
  Int pv = ipow(p, vm);
  if (L % pv != 0) fail(ErrorCode::Internal, "log(mP) not divisible by p^v_p(m)");
  Int mprime = Int(m) / pv;
  Int Mt = ipow(p, target);
  Int val = L / pv, mi;
  Int mpr = mprime % Mt;
  if (mpz_invert(mi.get_mpz_t(), mpr.get_mpz_t(), Mt.get_mpz_t()) == 0) fail(ErrorCode::Internal, "non-unit m'");
  val = val * mi;
  mpz_mod(val.get_mpz_t(), val.get_mpz_t(), Mt.get_mpz_t());
  PadicElement out;
  out.p = p;
  out.value = val;
  out.precision = target;
  out.is_zero = val == 0;
  return out;
}

PadicElement formal_log(const HeegnerInput& in, int target) { return formal_log(in.model, in.P, in.p, target); }

Theorem109Report heegner_report(const HeegnerInput& in, const ImageData& ingested, int rank_K, int target) {
  Theorem109Report r;
  QuadField K(in.d);
  r.admissibility = admissible(in.curve, K, in.p, ingested);
  PadicElement lg = formal_log(in, target);
  r.certified_precision = lg.precision;
  r.v_log = lg.valuation();
  r.unit = !lg.is_zero && r.v_log == 1;
  r.invariants_vanish = r.unit;
  TraceRecord tr = trace_at(in.curve, in.p);
  Int f = Int(1) - from_i64(tr.a_p) + static_cast<unsigned long>(in.p);
  r.bdp_constant_valuation = 2 * (valuation(f, in.p) - 1 + r.v_log);
  if (rank_K != 1) r.notes.push_back("rank E(K) = " + std::to_string(rank_K) + ", criterion needs rank 1");
  if (in.on_twist) r.notes.push_back("generator taken on the quadratic twist E^(D)(Q) inside E(K)");
  r.notes.push_back("index caveat: P is an ingested generator, not the Gross-Zagier point");
  if (lg.is_zero) r.notes.push_back("log vanishes to the certified precision");
  return r;
}

Theorem109Report theorem109_decide(const HeegnerInput& in, const ImageData& ingested, int rank_K, int target) {
  if (rank_K != 1) fail(ErrorCode::HypothesisFailed, "rank E(K) must be 1, got " + std::to_string(rank_K));
  Theorem109Report r = heegner_report(in, ingested, rank_K, target);
  if (!r.admissibility.admissible) {
    std::string why;
    for (std::size_t i = 0; i < 7; ++i)
      if (r.admissibility.conditions[i].value != Tri::True)
        why += "(" + std::to_string(i + 1) + ") " + r.admissibility.conditions[i].detail + " ";
    fail(ErrorCode::NotAdmissible, why);
  }
  return r;
}

}  // namespace anticyc
