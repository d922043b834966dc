// Admissible triples, residual image tests, the p-adic formal-group logarithm.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anticyc/curve.hpp"
#include "anticyc/quadfield.hpp"

namespace anticyc {

enum class Provenance { Computed, Ingested, Heuristic };
const char* provenance_name(Provenance p);

enum class Tri { True, False, Undecided };
const char* tri_name(Tri t);

struct Condition {
  Tri value = Tri::Undecided;
  Provenance source = Provenance::Computed;
  std::string detail;
};

struct AdmissibilityReport {
  /// Order: p splits; every l | N splits; good ordinary at p;
  /// p does not divide 6 N phi(N) h_K; a_p != +-1 mod p; residual surjectivity; ramified at every l | N.
  std::array<Condition, 7> conditions;
  bool admissible = false;
  bool undecided = false;
};

struct ImageData {
  std::optional<std::vector<std::uint64_t>> nonmaximal_primes;
};

AdmissibilityReport admissible(const CurveQ& curve, const QuadField& K, std::uint64_t p, const ImageData& ingested);

bool residual_ramified_at(const CurveQ& curve, std::uint64_t ell, std::uint64_t p);

Tri surjectivity_test(const CurveQ& curve, std::uint64_t p, const ImageData& ingested, std::uint64_t sample_bound = 1000);

struct PadicElement {
  std::uint64_t p = 0;
  Int value;          // residue mod p^precision
  int precision = 0;  // number of certified digits
  bool is_zero = false;

  /// v_p(value); meaningful when !is_zero
  int valuation() const;
};

struct HeegnerInput {
  CurveQ curve;      // E/Q
  std::uint64_t d = 0;
  std::uint64_t p = 0;
  CurveQ model;      // curve carrying P: E itself or its quadratic twist E^(D)
  RatPoint P;
  bool on_twist = false;
};

HeegnerInput make_heegner_input(const CurveQ& curve, std::uint64_t d, std::uint64_t p, const CurveQ& model,
                                const RatPoint& P, bool on_twist);

/// log of P on `model` attached to dx/(2y + a1 x + a3), certified mod p^target.
PadicElement formal_log(const CurveQ& model, const RatPoint& P, std::uint64_t p, int target);
PadicElement formal_log(const HeegnerInput& in, int target);

struct Theorem109Report {
  AdmissibilityReport admissibility;
  int v_log = 0;
  int certified_precision = 0;
  bool unit = false;               // log/p is a p-adic unit
  bool invariants_vanish = false;  // mu = lambda = 0
  int bdp_constant_valuation = 0;  // v_p(((1 - a_p + p)/p * log)^2)
  std::vector<std::string> notes;
};

/// Evaluates the criterion without requiring admissibility.
Theorem109Report heegner_report(const HeegnerInput& in, const ImageData& ingested, int rank_K, int target = 6);
/// Throws NotAdmissible unless the triple is admissible.
Theorem109Report theorem109_decide(const HeegnerInput& in, const ImageData& ingested, int rank_K, int target = 6);

}  // namespace anticyc
