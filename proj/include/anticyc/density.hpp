// (CR)-density: N+/N- factorization, the exceptional count k, residue classes r_Omega.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "anticyc/curve.hpp"
#include "anticyc/local.hpp"
#include "anticyc/quadfield.hpp"

namespace anticyc {

std::pair<Int, Int> n_plus_minus(const CurveQ& curve, const QuadField& K);

struct CRContext {
  CurveQ curve;
  std::uint64_t p = 0;
  Int N;
  /// r_1..r_t with the k exceptional primes first, each group ascending.
  std::vector<std::uint64_t> bad_primes;
  std::vector<LocalData> local;  // aligned with bad_primes
  unsigned k = 0;
  unsigned t = 0;

  bool exceptional(std::uint64_t q) const;
};

CRContext compute_k(const CurveQ& curve, std::uint64_t p);

/// A subset of the non-exceptional primes r_{k+1}..r_t.
class OmegaSubset {
 public:
  static OmegaSubset make(const CRContext& ctx, std::vector<std::uint64_t> primes);
  const std::vector<std::uint64_t>& primes() const { return primes_; }

 private:
  std::vector<std::uint64_t> primes_;
};

struct DensityResult {
  Rat delta;        // 1/2^{k+1}
  Int n_count;      // #N = 2^{t-k-1}
  Rat delta_omega;  // 1/2^t
};

DensityResult delta_S(const CRContext& ctx);

/// The odd-cardinality subsets Omega making up the set N.
std::vector<OmegaSubset> admissible_omegas(const CRContext& ctx);

/// N for odd N; 4N when 2 | N, since the splitting of 2 depends on d mod 8.
std::uint64_t residue_modulus(const CRContext& ctx);

/// Classes r mod residue_modulus (values of d) with (-r/q) = -1 for q in Omega and +1 for the other q | N.
/// Omega may be any subset of the primes dividing N.
std::set<std::uint64_t> residue_classes(const CRContext& ctx, const std::vector<std::uint64_t>& omega);
std::set<std::uint64_t> residue_classes(const CRContext& ctx, const OmegaSubset& omega);

struct CRScan {
  std::uint64_t in_S = 0;
  std::uint64_t primes = 0;
  std::optional<Rat> density;
};

/// Primes d <= dmax with d coprime to N and d != p.
CRScan cr_scan(const CRContext& ctx, std::uint64_t dmax, unsigned jobs = 1);
bool in_S(const CRContext& ctx, std::uint64_t d);

struct InertClassSets {
  std::uint64_t q = 0;
  std::uint64_t modulus = 0;
  std::set<std::uint64_t> jacobi;         // odd d mod 4q, coprime to q, with (q/d) = -1
  std::set<std::uint64_t> discriminant;   // odd d mod 4q, coprime to q, q inert in Q(sqrt(-d))
  std::set<std::uint64_t> discrepancy;    // symmetric difference
};

/// Both readings of "q is inert in K^d" for odd d, as classes mod 4q.
InertClassSets inert_class_sets(std::uint64_t q);

}  // namespace anticyc
