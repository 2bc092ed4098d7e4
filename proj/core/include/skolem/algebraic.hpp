#pragma once

// Algebraic counting: the number of sequences is the coefficient of
// x_1 x_2 ... x_2n in
//
//     F(n, X) = prod_{i=1..n} sum_{k=1..2n-d_i} x_k x_{k+d_i},
//
// with d_i = i (Skolem) or i + 1 (Langford). Summing (prod x) F(n, X) over
// all X in {+1,-1}^{2n} kills every other monomial and leaves 2^{2n} times
// that coefficient.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "skolem/modular.hpp"
#include "skolem/sequence.hpp"

namespace skolem {

inline constexpr int kMaxAlgebraicOrder = 32;

/// Assignment of +1/-1 to x_1..x_2n. Bit j set means x_{j+1} = -1.
class SignVector {
 public:
  SignVector(int n, std::uint64_t bits);
  static SignVector all_plus(int n) { return SignVector(n, 0); }

  int n() const noexcept { return n_; }
  int size() const noexcept { return 2 * n_; }
  std::uint64_t bits() const noexcept { return bits_; }
  /// x_position, 1-based.
  int value(int position) const noexcept { return (bits_ >> (position - 1)) & 1u ? -1 : 1; }
  /// prod x_i = (-1)^popcount.
  int sign() const noexcept { return std::popcount(bits_) % 2 ? -1 : 1; }

  SignVector negated() const noexcept;
  SignVector reversed() const noexcept;
  /// x_k negated at every even k.
  SignVector even_negated() const noexcept;

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::uint64_t mask() const noexcept {
    return n_ >= 32 ? ~std::uint64_t{0} : (std::uint64_t{1} << (2 * n_)) - 1;
  }

  int n_;
  std::uint64_t bits_;
};

std::string to_string(const SignVector& x);

/// Number of terms in difference factor i: 2n - d_i.
constexpr int factor_terms(Variant v, int n, int i) noexcept { return 2 * n - separation(v, i); }

/// F(n, X) evaluated term by term.
BigInt poly_eval(int n, Variant v, const SignVector& x);

/// Sum of sign(X) F(n, X) over all 2^{2n} vectors divided by 2^{2n};
/// halved for UpToReflection. Refuses n > 10.
BigInt count_naive(int n, Variant v, CountMode mode);

struct SymmetryReduction {
  int fixed_bits = 0;   // highest coordinates pinned to +1
  int multiplier = 1;
  friend bool operator==(const SymmetryReduction&, const SymmetryReduction&) = default;
};

/// Skolem with n = 0,1 mod 4: x_2n = x_{2n-1} = +1, x4 (negation combined
/// with even-position negation). Otherwise x_2n = +1, x2 (negation only).
SymmetryReduction symmetry_reduction(int n, Variant v);

/// No reduction: the whole cube, multiplier 1.
inline constexpr SymmetryReduction kNoSymmetry{0, 1};

struct LemmaViolation {
  std::string lemma;  // "negation", "reversal", "even-negation"
  SignVector witness;
};

struct LemmaReport {
  int samples = 0;
  bool even_negation_checked = false;
  std::vector<LemmaViolation> violations;
};

/// Samples X uniformly (seeded) and checks:
///   negation       sign(X) F(X) = sign(-X) F(-X)
///   reversal       F(X) = F(reverse X)
///   even-negation  sign(X) F(X) = sign(X^) F(X^), Skolem with n = 0,1 mod 4 only
LemmaReport check_symmetry_lemmas(int n, Variant v, int samples, std::uint64_t seed = 1);

}  // namespace skolem
