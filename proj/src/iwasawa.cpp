#include "anticyc/iwasawa.hpp"

#include "anticyc/errors.hpp"
#include "anticyc/local.hpp"

namespace anticyc {

namespace {

Int order_p_part(const std::vector<std::uint64_t>& invariants, std::uint64_t p) {
  Int r = 1;
  for (auto n : invariants)
    if (n > 0) r *= p_part(Int(static_cast<unsigned long>(n)), p);
  return r;
}

void require_pow(const Int& v, std::uint64_t p, const char* what) {
  if (!is_power_of(v, p)) fail(ErrorCode::InvalidArgument, std::string(what) + " = " + v.get_str() + " is not a power of p");
}

}  // namespace

Int KData::torsion_K_p(std::uint64_t p) const {
  if (p == 2) fail(ErrorCode::Unsupported, "E(K)[2^inf] is not determined by E(Q) and the twist");
  return order_p_part(torsion_Q, p) * order_p_part(torsion_twist, p);
}

Int KData::torsion_Q_p(std::uint64_t p) const { return order_p_part(torsion_Q, p); }

Int KData::sha_K_p(std::uint64_t p) const {
  if (p == 2) fail(ErrorCode::Unsupported, "2-part of Sha over K is out of scope");
  if (!sha_Q || !sha_twist) fail(ErrorCode::MissingData, "Sha order of E or of its twist not ingested");
  return p_part(*sha_Q * *sha_twist, p);
}

Int KData::sha_Q_p(std::uint64_t p) const {
  if (!sha_Q) fail(ErrorCode::MissingData, "Sha(E/Q) not ingested");
  return p_part(*sha_Q, p);
}

Int alpha_p_anticyclotomic(const TraceRecord& tr, SplittingType split) {
  if (tr.p < 7) fail(ErrorCode::SmallPrime, "alpha_p needs p >= 7");
  Int np(static_cast<unsigned long>(tr.n_p));
  switch (split) {
    case SplittingType::Split: {
      Int a = p_part(np, tr.p);
      return a * a;
    }
    case SplittingType::Ramified: return p_part(np, tr.p);
    case SplittingType::Inert: return p_part(count_points_fp2(tr), tr.p);
  }
  return 1;
}

Int alpha_p_cyclotomic(const TraceRecord& tr) {
  return p_part(Int(static_cast<unsigned long>(tr.n_p)), tr.p);
}

Int euler_characteristic(const EulerCharInputs& in) {
  require_pow(in.sha_p, in.p, "sha_p");
  require_pow(in.alpha_p, in.p, "alpha_p");
  require_pow(in.tau, in.p, "tau");
  require_pow(in.torsion_p, in.p, "torsion_p");
  Int num = in.sha_p * in.alpha_p * in.alpha_p * in.tau;
  Int den = in.torsion_p * in.torsion_p;
  if (num % den != 0) fail(ErrorCode::NotIntegral, num.get_str() + "/" + den.get_str() + " is not an integer");
  return num / den;
}

VanishingReport classify(const Int& chi, std::uint64_t p) {
  if (!is_power_of(chi, p)) fail(ErrorCode::InvalidArgument, "chi must be a power of p");
  VanishingReport r;
  r.chi = chi;
  bool one = chi == 1;
  r.mu_zero_and_lambda_zero = one;
  r.selmer_trivial = one;
  r.notes.push_back(one ? "chi = 1: mu = lambda = 0, Selmer group finite hence trivial"
                        : "chi = " + chi.get_str() + ": mu > 0 or lambda > 0");
  return r;
}

EulerCharInputs anticyclotomic_inputs(const CurveQ& curve, const QuadField& K, std::uint64_t p, const KData& data) {
  if (data.rank_K() > 0) fail(ErrorCode::Unsupported, "rank E(K) > 0: no anticyclotomic Euler characteristic formula");
  TraceRecord tr = count_points_fp(curve, p);
  EulerCharInputs in;
  in.p = p;
  in.setting = Setting::AnticyclotomicK;
  in.sha_p = data.sha_K_p(p);
  in.alpha_p = alpha_p_anticyclotomic(tr, splitting(p, K));
  in.tau = tau_anticyclotomic(curve, K.d(), p);
  in.torsion_p = data.torsion_K_p(p);
  in.notes = {"sha: " + data.source, "alpha: computed", "tau: computed", "torsion: " + data.source};
  return in;
}

EulerCharInputs cyclotomic_inputs(const CurveQ& curve, std::uint64_t p, const KData& data) {
  if (data.rank_Q > 0) fail(ErrorCode::Unsupported, "rank E(Q) > 0");
  TraceRecord tr = count_points_fp(curve, p);
  EulerCharInputs in;
  in.p = p;
  in.setting = Setting::CyclotomicQ;
  in.sha_p = data.sha_Q_p(p);
  in.alpha_p = alpha_p_cyclotomic(tr);
  Int tau = 1;
  for (const auto& ld : global_reduction(curve).local) tau *= static_cast<unsigned long>(tamagawa_p_part(ld, p));
  in.tau = tau;
  in.torsion_p = data.torsion_Q_p(p);
  in.notes = {"sha: " + data.source, "alpha: computed", "tau: computed", "torsion: " + data.source};
  return in;
}

namespace {

bool good_ordinary(const CurveQ& curve, const Int& N, std::uint64_t p, TraceRecord* out) {
  if (mod_u64(N, p) == 0) return false;
  TraceRecord tr = trace_at(curve, p);
  if (out) *out = tr;
  return tr.ordinary;
}

bool in_M(const CurveQ& curve, const QuadField& K, std::uint64_t p, const KData& data) {
  if (data.torsion_K_p(p) != 1) return true;
  return data.sha_K_p(p) * tau_anticyclotomic(curve, K.d(), p) != 1;
}

}  // namespace

std::set<std::uint64_t> exceptional_set_M(const CurveQ& curve, const QuadField& K, std::uint64_t pmax,
                                          const KData& data) {
  if (data.rank_K() != 0) fail(ErrorCode::HypothesisFailed, "rank E(K) = 0 required");
  Int N = conductor(curve);
  std::set<std::uint64_t> M;
  for (auto p : primes_in(3, pmax))
    if (good_ordinary(curve, N, p, nullptr) && in_M(curve, K, p, data)) M.insert(p);
  return M;
}

Theorem48Report theorem48_decide(const CurveQ& curve, const QuadField& K, std::uint64_t p, const KData& data) {
  if (data.rank_K() != 0) fail(ErrorCode::Unsupported, "rank E(K) = " + std::to_string(data.rank_K()));
  if (p < 7) fail(ErrorCode::SmallPrime, "K-anomalous criterion needs p >= 7");
  Int N = conductor(curve);
  TraceRecord tr{};
  if (!good_ordinary(curve, N, p, &tr)) fail(ErrorCode::HypothesisFailed, "p is not a prime of good ordinary reduction");
  if (in_M(curve, K, p, data)) fail(ErrorCode::InExceptionalSet, std::to_string(p) + " lies in the exceptional set");
  Theorem48Report r;
  r.a_p = tr.a_p;
  r.split = splitting(p, K);
  r.k_anomalous = is_K_anomalous(tr, r.split);
  Int chi = euler_characteristic(anticyclotomic_inputs(curve, K, p, data));
  r.report = classify(chi, p);
  if (r.report.selmer_trivial == r.k_anomalous)
    fail(ErrorCode::Internal, "Euler characteristic disagrees with the anomalous-prime criterion");
  r.report.notes.push_back(r.k_anomalous ? "p is K-anomalous: mu > 0 or lambda > 0"
                                         : "p is not K-anomalous: Selmer group over K_inf is 0");
  return r;
}

Theorem74Report theorem74_decide(const CurveQ& curve, std::uint64_t d, std::uint64_t p, const KData& data) {
  auto hyp = [](const std::string& item, const std::string& why) {
    fail(ErrorCode::HypothesisFailed, "(" + item + ") " + why);
  };
  if (p < 5 || !is_prime(p)) hyp("i", "p >= 5 prime required");
  if (data.rank_Q != 0) hyp("ii", "rank E(Q) = " + std::to_string(data.rank_Q));
  if (data.torsion_Q_p(p) != 1) hyp("iii", "E(Q)[p] != 0");
  Int N = conductor(curve);
  if (mod_u64(N, p) == 0) hyp("iv", "p divides the conductor");
  TraceRecord tr = count_points_fp(curve, p);
  std::int64_t r = ((tr.a_p % static_cast<std::int64_t>(p)) + p) % p;
  if (r == 1 || r == static_cast<std::int64_t>(p) - 1) hyp("iv", "a_p = " + std::to_string(tr.a_p) + " is +-1 mod p");
  if (!tr.ordinary) hyp("iv", "supersingular at p");
  Int chiQ = euler_characteristic(cyclotomic_inputs(curve, p, data));
  if (chiQ != 1) hyp("v", "cyclotomic Euler characteristic is " + chiQ.get_str());
  if (!is_prime(d) || mod_u64(N, d) == 0) hyp("d", "d must be a prime not dividing N");
  if (data.rank_twist != 0) hyp("d", "rank E(K^d) = " + std::to_string(data.rank_K()));

  Theorem74Report out;
  out.p = p;
  out.d = d;
  out.a_p = tr.a_p;
  out.chi_Q = chiQ;
  out.notes.push_back("Sel(E/K_inf^d) = 0 iff Sha(E/K^d)[p] = 0");
  if (data.sha_Q && data.sha_twist) {
    out.sha_K_p = data.sha_K_p(p);
    out.selmer_trivial = *out.sha_K_p == 1;
  } else {
    out.notes.push_back("Sha(E/K^d) not ingested; equivalence not evaluated");
  }
  return out;
}

bool lambda_rank_check(std::int64_t lambda_claimed, std::int64_t rank) { return lambda_claimed >= rank; }

}  // namespace anticyc
