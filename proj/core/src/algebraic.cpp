#include "skolem/algebraic.hpp"

#include <random>

#include "skolem/error.hpp"

namespace skolem {

namespace {

void check_order(int n) {
  if (n < 1) throw MalformedInput("order n must be positive");
  if (n > kMaxAlgebraicOrder) {
    throw CapacityError("algebraic counting supports n <= " + std::to_string(kMaxAlgebraicOrder));
  }
}

}  // namespace

SignVector::SignVector(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  check_order(n);
  if (bits_ & ~mask()) throw MalformedInput("sign vector has bits beyond 2n");
}

SignVector SignVector::negated() const noexcept { return SignVector(n_, ~bits_ & mask()); }

SignVector SignVector::reversed() const noexcept {
  const std::uint64_t rev = [b = bits_] {
    std::uint64_t r = 0;
    for (int i = 0; i < 64; ++i) r |= ((b >> i) & 1u) << (63 - i);
    return r;
  }();
  return SignVector(n_, rev >> (64 - 2 * n_));
}

SignVector SignVector::even_negated() const noexcept {
  // x_2, x_4, ... live at odd bit indices.
  return SignVector(n_, (bits_ ^ 0xAAAAAAAAAAAAAAAAull) & mask());
}

std::string to_string(const SignVector& x) {
  std::string out;
  for (int k = 1; k <= x.size(); ++k) out += x.value(k) > 0 ? '+' : '-';
  return out;
}

BigInt poly_eval(int n, Variant v, const SignVector& x) {
  if (x.n() != n) throw MalformedInput("sign vector order does not match n");
  BigInt product = 1;
  for (int i = 1; i <= n; ++i) {
    const int d = separation(v, i);
    std::int64_t sum = 0;
    for (int k = 1; k <= 2 * n - d; ++k) sum += x.value(k) * x.value(k + d);
    product *= sum;
    if (product == 0) break;
  }
  return product;
}

BigInt count_naive(int n, Variant v, CountMode mode) {
  check_order(n);
  if (n > 10) throw CapacityError("naive evaluation is limited to n <= 10 (4^n evaluations)");
  BigInt total = 0;
  const std::uint64_t end = std::uint64_t{1} << (2 * n);
  for (std::uint64_t bits = 0; bits < end; ++bits) {
    const SignVector x(n, bits);
    const BigInt value = poly_eval(n, v, x);
    if (x.sign() > 0) {
      total += value;
    } else {
      total -= value;
    }
  }
  if (total < 0 || (total % end) != 0) {
    throw MismatchError("signed sum is not a nonnegative multiple of 2^{2n}");
  }
  total /= end;
  if (mode == CountMode::UpToReflection && n > 1) {
    if (total % 2 != 0) throw MismatchError("odd total cannot be halved for reflection classes");
    total /= 2;
  }
  return total;
}

SymmetryReduction symmetry_reduction(int n, Variant v) {
  check_order(n);
  if (v == Variant::Skolem && existence(v, n)) return {2, 4};
  return {1, 2};
}

LemmaReport check_symmetry_lemmas(int n, Variant v, int samples, std::uint64_t seed) {
  check_order(n);
  LemmaReport report;
  report.samples = samples;
  report.even_negation_checked = v == Variant::Skolem && existence(v, n);

  std::mt19937_64 rng(seed);
  const std::uint64_t mask = n >= 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * n)) - 1;
  auto signed_value = [&](const SignVector& x) {
    BigInt value = poly_eval(n, v, x);
    return x.sign() > 0 ? value : BigInt(-value);
  };

  for (int s = 0; s < samples; ++s) {
    const SignVector x(n, rng() & mask);
    const BigInt base = signed_value(x);
    if (base != signed_value(x.negated())) report.violations.push_back({"negation", x});
    if (poly_eval(n, v, x) != poly_eval(n, v, x.reversed())) report.violations.push_back({"reversal", x});
    if (report.even_negation_checked && base != signed_value(x.even_negated())) {
      report.violations.push_back({"even-negation", x});
    }
  }
  return report;
}

}  // namespace skolem
