#include "anticyc/quadfield.hpp"

#include <cmath>
#include <mutex>
#include <numeric>

#include "anticyc/errors.hpp"

namespace anticyc {

const char* splitting_name(SplittingType s) {
  switch (s) {
    case SplittingType::Split: return "split";
    case SplittingType::Inert: return "inert";
    case SplittingType::Ramified: return "ramified";
  }
  return "?";
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "kronecker symbol with n = 0");
  int sign = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) sign = -sign;
  }
  // (a/2) factors
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  if (v > 0) {
    if ((a & 1) == 0) return 0;
    std::int64_t r = ((a % 8) + 8) % 8;
    if ((v & 1) && (r == 3 || r == 5)) sign = -sign;
  }
  // Jacobi symbol (a/n) for odd n > 0
  std::int64_t m = n;
  std::int64_t b = ((a % m) + m) % m;
  while (b != 0) {
    while ((b & 1) == 0) {
      b >>= 1;
      std::int64_t r = m % 8;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(b, m);
    if (b % 4 == 3 && m % 4 == 3) sign = -sign;
    b %= m;
  }
  return m == 1 ? sign : 0;
}

bool is_squarefree_u64(std::uint64_t n) {
  if (n == 0) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % (q * q) == 0) return false;
    if (n % q == 0) n /= q;
  }
  return true;
}

bool is_fundamental_discriminant(std::int64_t D) {
  if (D == 0 || D == 1) return false;
  std::uint64_t a = D < 0 ? -static_cast<std::uint64_t>(D) : D;
  std::int64_t r = ((D % 4) + 4) % 4;
  if (r == 1) return is_squarefree_u64(a);
  if (r != 0) return false;
  std::int64_t m = D / 4;
  std::int64_t rm = ((m % 4) + 4) % 4;
  if (rm != 2 && rm != 3) return false;
  return is_squarefree_u64(a / 4);
}

struct QuadField::Cache {
  std::once_flag once;
  std::uint64_t h = 0;
};

QuadField::QuadField(std::uint64_t d) : d_(d), cache_(std::make_shared<Cache>()) {
  if (d == 0 || !is_squarefree_u64(d)) fail(ErrorCode::InvalidArgument, "d must be squarefree and positive");
  if (d > (1ULL << 60)) fail(ErrorCode::BoundExceeded, "d too large");
  disc_ = d % 4 == 3 ? -static_cast<std::int64_t>(d) : -4 * static_cast<std::int64_t>(d);
}

QuadField QuadField::from_discriminant(std::int64_t D) {
  if (D >= 0 || !is_fundamental_discriminant(D)) fail(ErrorCode::InvalidArgument, "not a negative fundamental discriminant");
  std::uint64_t a = -static_cast<std::uint64_t>(D);
  return QuadField(a % 4 == 0 ? a / 4 : a);
}

std::uint64_t QuadField::class_number() const {
  std::call_once(cache_->once, [this] { cache_->h = class_number_of_disc(disc_); });
  return cache_->h;
}

std::string QuadField::str() const { return "Q(sqrt(-" + std::to_string(d_) + "))"; }

SplittingType splitting(std::uint64_t ell, const QuadField& K) {
  std::int64_t D = K.disc();
  std::uint64_t a = -static_cast<std::uint64_t>(D);
  if (a % ell == 0) return SplittingType::Ramified;
  return kronecker(D, static_cast<std::int64_t>(ell)) == 1 ? SplittingType::Split : SplittingType::Inert;
}

std::uint64_t class_number(const QuadField& K) { return K.class_number(); }

std::uint64_t class_number_of_disc(std::int64_t D) {
  if (D >= 0 || (((D % 4) + 4) % 4 != 0 && ((D % 4) + 4) % 4 != 1))
    fail(ErrorCode::InvalidArgument, "D must be a negative discriminant");
  if (D < -100000000) fail(ErrorCode::BoundExceeded, "|D| above 10^8");
  std::int64_t N = -D;
  std::uint64_t h = 0;
  // a <= sqrt(|D|/3) for reduced forms
  for (std::int64_t a = 1; 3 * a * a <= N; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

bool unit_group_is_pm1(const QuadField& K) { return K.disc() != -3 && K.disc() != -4; }

}  // namespace anticyc
