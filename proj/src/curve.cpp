#include "anticyc/curve.hpp"

#include <cmath>
#include <sstream>

#include "anticyc/errors.hpp"

namespace anticyc {

Int CurveQ::c4() const {
  Int B2 = b2();
  return B2 * B2 - 24 * b4();
}

Int CurveQ::c6() const {
  Int B2 = b2();
  return -B2 * B2 * B2 + 36 * B2 * b4() - 216 * b6();
}

Int CurveQ::disc() const {
  Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
  return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}

Rat CurveQ::j_invariant() const {
  Int D = disc();
  if (D == 0) fail(ErrorCode::InvalidArgument, "singular model has no j-invariant");
  Int C4 = c4();
  Rat j(C4 * C4 * C4, D);
  j.canonicalize();
  return j;
}

std::string CurveQ::str() const {
  std::ostringstream os;
  os << '[' << a1 << ',' << a2 << ',' << a3 << ',' << a4 << ',' << a6 << ']';
  return os.str();
}

Int discriminant(const CurveQ& c) { return c.disc(); }

Int height(const Int& A, const Int& B) {
  Int a = abs(A);
  Int h1 = a * a * a, h2 = B * B;
  return h1 > h2 ? h1 : h2;
}

bool on_curve(const CurveQ& c, const RatPoint& P) {
  if (P.infinity) return true;
  const Rat &x = P.x, &y = P.y;
  Rat lhs = y * y + Rat(c.a1) * x * y + Rat(c.a3) * y;
  Rat rhs = x * x * x + Rat(c.a2) * x * x + Rat(c.a4) * x + Rat(c.a6);
  return lhs == rhs;
}

RatPoint negate(const CurveQ& c, const RatPoint& P) {
  if (P.infinity) return P;
  return RatPoint{P.x, -P.y - Rat(c.a1) * P.x - Rat(c.a3), false};
}

RatPoint add(const CurveQ& c, const RatPoint& P, const RatPoint& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  Rat lambda, nu;
  if (P.x == Q.x) {
    if (P.y + Q.y + Rat(c.a1) * Q.x + Rat(c.a3) == 0) return RatPoint::at_infinity();
    Rat num = 3 * P.x * P.x + 2 * Rat(c.a2) * P.x + Rat(c.a4) - Rat(c.a1) * P.y;
    Rat den = 2 * P.y + Rat(c.a1) * P.x + Rat(c.a3);
    lambda = num / den;
    nu = (-P.x * P.x * P.x + Rat(c.a4) * P.x + 2 * Rat(c.a6) - Rat(c.a3) * P.y) / den;
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
    nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
  }
  Rat x3 = lambda * lambda + Rat(c.a1) * lambda - Rat(c.a2) - P.x - Q.x;
  Rat y3 = -(lambda + Rat(c.a1)) * x3 - nu - Rat(c.a3);
  return RatPoint{x3, y3, false};
}

RatPoint mul(const CurveQ& c, const RatPoint& P, long n) {
  if (n < 0) return mul(c, negate(c, P), -n);
  RatPoint R = RatPoint::at_infinity(), B = P;
  while (n) {
    if (n & 1) R = add(c, R, B);
    n >>= 1;
    if (n) B = add(c, B, B);
  }
  return R;
}

bool twelfth_power_free(std::int64_t A, std::int64_t B) {
  if (A == 0 && B == 0) return false;
  std::uint64_t a = A < 0 ? -static_cast<std::uint64_t>(A) : A;
  std::uint64_t b = B < 0 ? -static_cast<std::uint64_t>(B) : B;
  for (std::uint64_t q = 2;; ++q) {
    unsigned __int128 q4 = static_cast<unsigned __int128>(q) * q * q * q;
    unsigned __int128 q6 = q4 * q * q;
    bool a_room = a == 0 || q4 <= a;
    bool b_room = b == 0 || q6 <= b;
    if (!a_room || !b_room) return true;
    if (a % static_cast<std::uint64_t>(q4) == 0 && (b == 0 || b % static_cast<std::uint64_t>(q6) == 0)) return false;
  }
}

std::int64_t a_bound(std::uint64_t x) {
  auto a = static_cast<std::int64_t>(std::cbrt(static_cast<long double>(x)));
  while (a > 0 && static_cast<unsigned __int128>(a) * a * a > x) --a;
  while (static_cast<unsigned __int128>(a + 1) * (a + 1) * (a + 1) <= x) ++a;
  return a;
}

std::int64_t b_bound(std::uint64_t x) {
  auto b = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
  while (b > 0 && static_cast<unsigned __int128>(b) * b > x) --b;
  while (static_cast<unsigned __int128>(b + 1) * (b + 1) <= x) ++b;
  return b;
}

void for_each_short_model(std::uint64_t x, std::int64_t a_lo, std::int64_t a_hi,
                          const std::function<void(const ShortPair&)>& fn) {
  std::int64_t am = a_bound(x), bm = b_bound(x);
  a_lo = std::max(a_lo, -am);
  a_hi = std::min(a_hi, am);
  for (std::int64_t A = a_lo; A <= a_hi; ++A) {
    for (std::int64_t B = -bm; B <= bm; ++B) {
      __int128 d = 4 * static_cast<__int128>(A) * A * A + 27 * static_cast<__int128>(B) * B;
      if (d == 0) continue;
      if (!twelfth_power_free(A, B)) continue;
      fn(ShortPair{A, B});
    }
  }
}

std::vector<CurveQ> enumerate_curves(const HeightWindow& window) {
  std::vector<CurveQ> out;
  if (window.x < 1) return out;
  std::uint64_t x = to_u64(window.x);
  for_each_short_model(x, -a_bound(x), a_bound(x), [&](const ShortPair& s) {
    out.push_back(CurveQ::short_form(from_i64(s.A), from_i64(s.B)));
  });
  return out;
}

}  // namespace anticyc
