// Tate's algorithm, Tamagawa p-parts, Kida's p-divisibility predicate.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anticyc/curve.hpp"

namespace anticyc {

enum class KodairaKind { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

struct KodairaType {
  KodairaKind kind = KodairaKind::I0;
  int n = 0;  // for In and Instar

  static KodairaType I(int n) { return n == 0 ? KodairaType{} : KodairaType{KodairaKind::In, n}; }
  static KodairaType Istar(int n) { return n == 0 ? KodairaType{KodairaKind::I0star, 0} : KodairaType{KodairaKind::Instar, n}; }
  /// "I0", "I5", "II", "III", "IV", "I0*", "I3*", "IV*", "III*", "II*"
  std::string symbol() const;
  static KodairaType parse(const std::string& s);
  bool operator==(const KodairaType&) const = default;
};

struct LocalData {
  std::uint64_t ell = 0;
  KodairaType type;
  std::uint64_t c = 1;  // Tamagawa number
  int v_disc = 0;       // valuation of the minimal discriminant
  int v_cond = 0;       // conductor exponent
  std::optional<bool> split_multiplicative;
};

struct TateResult {
  LocalData local;
  CurveQ minimal;  // model minimal at ell, integral, obtained by the algorithm's changes of variables
  int rescalings = 0;
};

/// With require_minimal, a model that is not minimal at ell raises NonMinimalModel.
TateResult tate(const CurveQ& curve, std::uint64_t ell, bool require_minimal = true);
LocalData tate_algorithm(const CurveQ& curve, std::uint64_t ell, bool require_minimal = true);

std::uint64_t tamagawa_p_part(const LocalData& local, std::uint64_t p);

/// Whether base change to a quadratic extension of Q_ell can make p divide the Tamagawa number.
bool kida_p_divides(const KodairaType& base, bool ramified, std::uint64_t ell, std::uint64_t p);

struct GlobalReduction {
  Int conductor;
  std::vector<LocalData> local;  // one entry per prime dividing the discriminant
};

/// Tate's algorithm at every prime dividing the discriminant of a globally minimal model.
GlobalReduction global_reduction(const CurveQ& curve, bool require_minimal = true);
Int conductor(const CurveQ& curve);

/// Product over bad l split in Q(sqrt(-d)) of the p-part of c_l.
std::uint64_t tau_anticyclotomic(const CurveQ& curve, std::uint64_t d, std::uint64_t p);

}  // namespace anticyc
