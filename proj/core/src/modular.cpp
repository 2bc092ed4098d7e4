#include "skolem/modular.hpp"

#include <numeric>
#include <string>

#include "skolem/error.hpp"

namespace skolem {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exponent, std::uint64_t m) noexcept {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exponent) {
    if (exponent & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw MalformedInput(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

bool is_prime(std::uint32_t value) noexcept {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= value; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> largest_primes_below_2_31(std::size_t count) {
  std::vector<std::uint32_t> primes;
  for (std::uint32_t v = (std::uint32_t{1} << 31) - 1; primes.size() < count && v > 2; v -= 2) {
    if (is_prime(v)) primes.push_back(v);
  }
  return primes;
}

BigInt accumulation_bound(int n) {
  BigInt bound = 1;
  for (int k = n; k <= 2 * n - 1; ++k) bound *= k;
  return bound << (2 * n);
}

ModulusSet::ModulusSet(int n, std::vector<std::uint32_t> moduli) : n_(n), moduli_(std::move(moduli)) {
  if (n < 1) throw MalformedInput("order n must be positive");
  if (moduli_.empty()) throw MalformedInput("modulus set is empty");
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    const auto m = moduli_[i];
    if (m < 3 || m % 2 == 0 || m >= (std::uint32_t{1} << 31)) {
      throw MalformedInput("modulus " + std::to_string(m) + " must be odd, >= 3 and below 2^31");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::gcd(m, moduli_[j]) != 1) {
        throw MalformedInput("moduli " + std::to_string(moduli_[j]) + " and " + std::to_string(m) +
                             " are not co-prime");
      }
    }
    inverse_pow2_.push_back(invmod(powmod(2, static_cast<std::uint64_t>(2 * n), m), m));
  }
}

ModulusSet ModulusSet::defaults(int n) {
  const BigInt needed = 2 * accumulation_bound(n);
  std::size_t count = 4;
  for (;;) {
    auto primes = largest_primes_below_2_31(count);
    BigInt product = 1;
    for (auto p : primes) product *= p;
    if (product > needed) return ModulusSet(n, std::move(primes));
    ++count;
  }
}

BigInt ModulusSet::product() const {
  BigInt product = 1;
  for (auto m : moduli_) product *= m;
  return product;
}

BigInt crt(std::span<const std::uint64_t> residues, std::span<const std::uint32_t> moduli) {
  if (residues.size() != moduli.size()) throw MalformedInput("residue/modulus count mismatch");
  // Garner's mixed-radix form: x = c0 + c1 m0 + c2 m0 m1 + ...
  std::vector<std::uint64_t> coeff(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint64_t m = moduli[i];
    std::uint64_t value = residues[i] % m;
    std::uint64_t radix = 1;
    std::uint64_t partial = 0;
    for (std::size_t j = 0; j < i; ++j) {
      partial = (partial + mulmod(coeff[j], radix, m)) % m;
      radix = mulmod(radix, moduli[j] % m, m);
    }
    coeff[i] = mulmod((value + m - partial) % m, invmod(radix, m), m);
  }
  BigInt x = 0;
  for (std::size_t i = moduli.size(); i-- > 0;) {
    x = x * moduli[i] + coeff[i];
  }
  return x;
}

}  // namespace skolem
