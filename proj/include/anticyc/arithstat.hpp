// Family statistics: frak S_p / frak T_p, density bounds, Cohen-Lenstra, height scans.
#pragma once

#include <cstdint>
#include <optional>

#include "anticyc/arith.hpp"
#include "anticyc/quadfield.hpp"

namespace anticyc {

struct FamilyScanResult {
  std::uint64_t p = 0;
  std::uint64_t frak_S = 0;  // pairs with p | #E(F_p)
  std::uint64_t frak_T = 0;  // pairs with #E(F_p) = 0 or 2 mod p
  std::uint64_t nonsingular = 0;
  Rat ratio_S;               // frak_S / p^2
};

FamilyScanResult frak_S(std::uint64_t p, unsigned jobs = 1);

std::uint64_t b_of_p(std::uint64_t p, const QuadField& K);

struct Approx {
  long double value;
  long double error_bound;
};

Approx cohen_lenstra_f0(std::uint64_t p, unsigned terms = 64);

/// zeta(s) for real s > 1, by partial sum plus integral tail.
Approx zeta(double s);

struct TamagawaBound {
  long double partial_sum;   // sum of (l-1)^2/(l^2(l^p-1)) over eligible l <= lmax
  long double dominating;    // sum of 1/l^p over the same l
  long double zeta_bound;    // zeta(p) - 1
};

TamagawaBound tamagawa_density_bound(std::uint64_t p, const std::optional<QuadField>& K, std::uint64_t lmax);

/// zeta(10) d(p)/p^2, or zeta(10) b(p)/p^2 when K is given.
long double E3_bound(std::uint64_t p, const std::optional<QuadField>& K, unsigned jobs = 1);

struct HeightScanCounts {
  std::uint64_t total = 0;
  std::uint64_t e2 = 0;
  std::uint64_t e3 = 0;
  std::uint64_t dagger_excluded = 0;
};

HeightScanCounts height_scan(std::uint64_t x, std::uint64_t p, const std::optional<QuadField>& K, unsigned jobs = 1);

}  // namespace anticyc
