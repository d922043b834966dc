// Imaginary quadratic fields Q(sqrt(-d)).
#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace anticyc {

enum class SplittingType { Split, Inert, Ramified };
const char* splitting_name(SplittingType s);

/// Kronecker symbol (a/n), n != 0.
int kronecker(std::int64_t a, std::int64_t n);

bool is_squarefree_u64(std::uint64_t n);
bool is_fundamental_discriminant(std::int64_t D);

class QuadField {
 public:
  /// K = Q(sqrt(-d)), d squarefree and positive.
  explicit QuadField(std::uint64_t d);
  /// Field with fundamental discriminant D < 0.
  static QuadField from_discriminant(std::int64_t D);

  std::uint64_t d() const { return d_; }
  std::int64_t disc() const { return disc_; }
  /// Computed on first use; thread-safe.
  std::uint64_t class_number() const;
  std::string str() const;

 private:
  struct Cache;
  std::uint64_t d_;
  std::int64_t disc_;
  std::shared_ptr<Cache> cache_;
};

SplittingType splitting(std::uint64_t ell, const QuadField& K);
std::uint64_t class_number(const QuadField& K);
/// Count of reduced primitive forms of discriminant D (fundamental or not).
std::uint64_t class_number_of_disc(std::int64_t D);
bool unit_group_is_pm1(const QuadField& K);

}  // namespace anticyc
