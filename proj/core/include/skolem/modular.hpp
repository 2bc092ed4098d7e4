#pragma once

// Modular arithmetic over 31-bit odd moduli and Chinese-remainder
// reconstruction of arbitrary-precision results.

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace skolem {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return (a * b) % m;  // a, b < m < 2^31
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) noexcept;
/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

bool is_prime(std::uint32_t value) noexcept;
/// The `count` largest primes below 2^31, descending.
std::vector<std::uint32_t> largest_primes_below_2_31(std::size_t count);

/// 2^{2n} * (2n-1)!/(n-1)!: bounds |sum over all sign vectors of sign * F|
/// for either variant.
BigInt accumulation_bound(int n);

/// Pairwise co-prime odd moduli below 2^31, tied to an order n so the
/// inverse of 2^{2n} modulo each is available.
class ModulusSet {
 public:
  ModulusSet() = default;
  /// Throws MalformedInput on even, too-large, or non-co-prime moduli.
  ModulusSet(int n, std::vector<std::uint32_t> moduli);

  /// The four largest primes below 2^31, extended with further primes until
  /// the product exceeds 2 * accumulation_bound(n).
  static ModulusSet defaults(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return moduli_.size(); }
  std::span<const std::uint32_t> moduli() const noexcept { return moduli_; }
  std::uint32_t modulus(std::size_t i) const { return moduli_.at(i); }
  /// (2^{2n})^{-1} mod moduli[i].
  std::uint64_t inverse_pow2(std::size_t i) const { return inverse_pow2_.at(i); }
  BigInt product() const;

  friend bool operator==(const ModulusSet& a, const ModulusSet& b) noexcept {
    return a.n_ == b.n_ && a.moduli_ == b.moduli_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint32_t> moduli_;
  std::vector<std::uint64_t> inverse_pow2_;
};

/// Unique value in [0, prod moduli) with the given residues.
BigInt crt(std::span<const std::uint64_t> residues, std::span<const std::uint32_t> moduli);

}  // namespace skolem
