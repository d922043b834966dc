// Integer helpers on top of GMP.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace anticyc {

using Int = mpz_class;
using Rat = mpq_class;

/// v_p(n) for n != 0.
int valuation(const Int& n, unsigned long p);
int valuation(const Rat& q, unsigned long p);
/// Largest power of p dividing n (n != 0).
Int p_part(const Int& n, unsigned long p);
bool is_power_of(const Int& n, unsigned long p);
Int ipow(unsigned long base, unsigned long e);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

/// Prime factorization of |n|, primes ascending. n != 0.
std::vector<std::pair<Int, int>> factor(const Int& n);
std::vector<std::uint64_t> prime_divisors_u64(const Int& n);
bool is_squarefree(const Int& n);
Int euler_phi(const Int& n);

std::int64_t to_i64(const Int& n);
std::uint64_t to_u64(const Int& n);
Int from_i64(std::int64_t v);

/// Nonnegative residue of n mod m.
std::uint64_t mod_u64(const Int& n, std::uint64_t m);
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

std::string str(const Int& n);
std::string str(const Rat& q);

}  // namespace anticyc
