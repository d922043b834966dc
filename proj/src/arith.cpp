#include "anticyc/arith.hpp"

#include <algorithm>
#include <map>

#include "anticyc/errors.hpp"

namespace anticyc {

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadReduction: return "BadReduction";
    case ErrorCode::SmallPrime: return "SmallPrime";
    case ErrorCode::NonMinimalModel: return "NonMinimalModel";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::RamifiedBadPrime: return "RamifiedBadPrime";
    case ErrorCode::AdditiveBadPrime: return "AdditiveBadPrime";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::MissingData: return "MissingData";
    case ErrorCode::MissingTwist: return "MissingTwist";
    case ErrorCode::InExceptionalSet: return "InExceptionalSet";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::PointAtInfinity: return "PointAtInfinity";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::MissingGenerator: return "MissingGenerator";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NetworkUnavailable: return "NetworkUnavailable";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

int valuation(const Int& n, unsigned long p) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "valuation of zero");
  Int m = abs(n);
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

int valuation(const Rat& q, unsigned long p) {
  return valuation(Int(q.get_num()), p) - valuation(Int(q.get_den()), p);
}

Int p_part(const Int& n, unsigned long p) { return ipow(p, valuation(n, p)); }

bool is_power_of(const Int& n, unsigned long p) {
  if (n <= 0) return false;
  Int m = n;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
  return m == 1;
}

Int ipow(unsigned long base, unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  Int m(std::to_string(n));
  return mpz_probab_prime_p(m.get_mpz_t(), 40) > 0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) { return primes_in(2, n); }

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || hi < lo) return out;
  std::vector<bool> comp(hi + 1, false);
  for (std::uint64_t i = 2; i * i <= hi; ++i)
    if (!comp[i])
      for (std::uint64_t j = i * i; j <= hi; j += i) comp[j] = true;
  for (std::uint64_t i = std::max<std::uint64_t>(lo, 2); i <= hi; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

namespace {

bool probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
Int rho(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const Int& v) {
      Int t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Int d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (probable_prime(n)) {
    out[n]++;
    return;
  }
  Int f = rho(n);
  split(f, out);
  split(n / f, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factor(const Int& n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "factor of zero");
  Int m = abs(n);
  std::map<Int, int> acc;
  static const std::vector<std::uint64_t> small = primes_up_to(10000);
  for (auto p : small) {
    if (m == 1) break;
    if (Int(p) * p > m) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      acc[Int(p)]++;
    }
  }
  split(m, acc);
  return {acc.begin(), acc.end()};
}

std::vector<std::uint64_t> prime_divisors_u64(const Int& n) {
  std::vector<std::uint64_t> out;
  for (auto& [q, e] : factor(n)) {
    if (!q.fits_ulong_p()) fail(ErrorCode::BoundExceeded, "prime divisor exceeds 64 bits: " + q.get_str());
    out.push_back(q.get_ui());
  }
  return out;
}

bool is_squarefree(const Int& n) {
  for (auto& [q, e] : factor(n))
    if (e > 1) return false;
  return true;
}

Int euler_phi(const Int& n) {
  Int r = abs(n);
  for (auto& [q, e] : factor(n)) r = r / q * (q - 1);
  return r;
}

std::int64_t to_i64(const Int& n) {
  if (!n.fits_slong_p()) fail(ErrorCode::BoundExceeded, "integer exceeds 64 bits: " + n.get_str());
  return n.get_si();
}

std::uint64_t to_u64(const Int& n) {
  if (n < 0 || !n.fits_ulong_p()) fail(ErrorCode::BoundExceeded, "integer outside u64: " + n.get_str());
  return n.get_ui();
}

Int from_i64(std::int64_t v) { return Int(static_cast<long>(v)); }

std::uint64_t mod_u64(const Int& n, std::uint64_t m) {
  return mpz_fdiv_ui(n.get_mpz_t(), m);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::string str(const Int& n) { return n.get_str(); }
std::string str(const Rat& q) { return q.get_str(); }

}  // namespace anticyc
