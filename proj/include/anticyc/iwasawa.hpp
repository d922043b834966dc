// Euler characteristics, the vanishing classification, Theorems 4.8 and 7.4.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anticyc/curve.hpp"
#include "anticyc/modp.hpp"
#include "anticyc/quadfield.hpp"

namespace anticyc {

enum class Setting { CyclotomicQ, AnticyclotomicK };

struct EulerCharInputs {
  std::uint64_t p = 0;
  Int sha_p = 1;
  Int alpha_p = 1;
  Int tau = 1;
  Int torsion_p = 1;
  Setting setting = Setting::AnticyclotomicK;
  std::vector<std::string> notes;  // provenance of each factor
};

struct VanishingReport {
  Int chi;
  bool mu_zero_and_lambda_zero = false;
  bool selmer_trivial = false;
  std::vector<std::string> notes;
};

/// Ingested arithmetic of E over K = Q(sqrt(-d)) through E/Q and its twist E^(D)/Q.
struct KData {
  int rank_Q = 0;
  int rank_twist = 0;
  std::optional<Int> sha_Q;
  std::optional<Int> sha_twist;
  std::vector<std::uint64_t> torsion_Q;
  std::vector<std::uint64_t> torsion_twist;
  std::string source = "ingested";

  int rank_K() const { return rank_Q + rank_twist; }
  /// p-part of #E(K)_tors for odd p.
  Int torsion_K_p(std::uint64_t p) const;
  Int torsion_Q_p(std::uint64_t p) const;
  /// p-part of #Sha(E/K) for odd p; MissingData when an order is absent.
  Int sha_K_p(std::uint64_t p) const;
  Int sha_Q_p(std::uint64_t p) const;
};

Int alpha_p_anticyclotomic(const TraceRecord& tr, SplittingType split);
Int alpha_p_cyclotomic(const TraceRecord& tr);

Int euler_characteristic(const EulerCharInputs& in);
VanishingReport classify(const Int& chi, std::uint64_t p);

EulerCharInputs anticyclotomic_inputs(const CurveQ& curve, const QuadField& K, std::uint64_t p, const KData& data);
EulerCharInputs cyclotomic_inputs(const CurveQ& curve, std::uint64_t p, const KData& data);

std::set<std::uint64_t> exceptional_set_M(const CurveQ& curve, const QuadField& K, std::uint64_t pmax,
                                          const KData& data);

struct Theorem48Report {
  VanishingReport report;
  std::int64_t a_p = 0;
  SplittingType split = SplittingType::Split;
  bool k_anomalous = false;
};

Theorem48Report theorem48_decide(const CurveQ& curve, const QuadField& K, std::uint64_t p, const KData& data);

struct Theorem74Report {
  std::uint64_t p = 0, d = 0;
  std::int64_t a_p = 0;
  Int chi_Q;                           // cyclotomic Euler characteristic over Q
  std::optional<Int> sha_K_p;          // #Sha(E/K^d)[p^inf] when ingested
  std::optional<bool> selmer_trivial;  // evaluated through the equivalence
  std::vector<std::string> notes;
};

/// Throws HypothesisFailed naming the first violated item (i)-(v), or "d" for the condition on d.
Theorem74Report theorem74_decide(const CurveQ& curve, std::uint64_t d, std::uint64_t p, const KData& data);

bool lambda_rank_check(std::int64_t lambda_claimed, std::int64_t rank);

}  // namespace anticyc
