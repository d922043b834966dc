// Integral Weierstrass models over Q and height-ordered enumeration.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "anticyc/arith.hpp"

namespace anticyc {

struct CurveQ {
  Int a1, a2, a3, a4, a6;

  CurveQ() = default;
  CurveQ(Int a1_, Int a2_, Int a3_, Int a4_, Int a6_)
      : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)) {}
  /// y^2 = x^3 + A x + B
  static CurveQ short_form(const Int& A, const Int& B) { return CurveQ(0, 0, 0, A, B); }
  static CurveQ from_ainvs(const std::array<Int, 5>& a) { return CurveQ(a[0], a[1], a[2], a[3], a[4]); }

  bool is_short() const { return a1 == 0 && a2 == 0 && a3 == 0; }
  Int b2() const { return a1 * a1 + 4 * a2; }
  Int b4() const { return 2 * a4 + a1 * a3; }
  Int b6() const { return a3 * a3 + 4 * a6; }
  Int b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  Int c4() const;
  Int c6() const;
  Int disc() const;
  /// j = c4^3 / Delta. Throws InvalidArgument on a singular model.
  Rat j_invariant() const;
  std::array<Int, 5> ainvs() const { return {a1, a2, a3, a4, a6}; }
  std::string str() const;

  bool operator==(const CurveQ&) const = default;
};

Int discriminant(const CurveQ& c);
/// H(E) = max(|A|^3, B^2)
Int height(const Int& A, const Int& B);

struct HeightWindow {
  Int x;
};

/// Rational point in affine coordinates, or the point at infinity.
struct RatPoint {
  Rat x, y;
  bool infinity = false;

  static RatPoint at_infinity() { return RatPoint{0, 0, true}; }
  bool operator==(const RatPoint& o) const {
    return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
  }
};

bool on_curve(const CurveQ& c, const RatPoint& P);
RatPoint negate(const CurveQ& c, const RatPoint& P);
RatPoint add(const CurveQ& c, const RatPoint& P, const RatPoint& Q);
RatPoint mul(const CurveQ& c, const RatPoint& P, long n);

/// No prime q with q^4 | A and q^6 | B, i.e. gcd(A^3, B^2) is 12th-power-free.
bool twelfth_power_free(std::int64_t A, std::int64_t B);

struct ShortPair {
  std::int64_t A, B;
};

/// Largest |A| and |B| allowed by the height bound.
std::int64_t a_bound(std::uint64_t x);
std::int64_t b_bound(std::uint64_t x);

/// Visits admissible (A,B) with H <= x and A in [a_lo, a_hi], lexicographic order.
void for_each_short_model(std::uint64_t x, std::int64_t a_lo, std::int64_t a_hi,
                          const std::function<void(const ShortPair&)>& fn);

std::vector<CurveQ> enumerate_curves(const HeightWindow& window);

}  // namespace anticyc
