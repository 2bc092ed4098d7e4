#pragma once

// Gray-code walk over a sub-cube of sign vectors. Consecutive vectors differ
// in one coordinate, so every difference sum s_i changes in at most two terms
// and F(n, X) is re-evaluated with O(n) work per step.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skolem/algebraic.hpp"
#include "skolem/modular.hpp"

namespace skolem {

/// Current sign vector plus the n difference sums
/// s_i = sum_{k=1..K_i} x_k x_{k+d_i}, kept in step with single-coordinate flips.
class GrayState {
 public:
  GrayState(Variant v, int n, const SignVector& start);

  Variant variant() const noexcept { return variant_; }
  int n() const noexcept { return n_; }
  int sign() const noexcept { return sign_; }
  SignVector x() const;
  std::span<const int> sums() const noexcept { return {sums_.data(), static_cast<std::size_t>(n_)}; }

  /// Negate x_position (1-based) and update every s_i.
  void flip(int position) noexcept {
    const int j = position + kPad;
    const int xj = x_[static_cast<std::size_t>(j)];
    for (int i = 0; i < n_; ++i) {
      const int d = seps_[static_cast<std::size_t>(i)];
      sums_[static_cast<std::size_t>(i)] -=
          2 * xj * (x_[static_cast<std::size_t>(j + d)] + x_[static_cast<std::size_t>(j - d)]);
    }
    x_[static_cast<std::size_t>(j)] = static_cast<std::int8_t>(-xj);
    sign_ = -sign_;
  }

  /// Difference sums evaluated from scratch for the current vector.
  std::vector<int> recompute_sums() const;

 private:
  // Zero padding on both sides lets x_{k-d} and x_{k+d} be read without
  // range checks; out-of-range neighbours contribute nothing.
  static constexpr int kPad = kMaxAlgebraicOrder + 2;

  Variant variant_;
  int n_;
  int sign_ = 1;
  std::array<std::int8_t, 2 * kMaxAlgebraicOrder + 2 * kPad + 1> x_{};
  std::array<int, kMaxAlgebraicOrder> sums_{};
  std::array<int, kMaxAlgebraicOrder> seps_{};
};

/// One independent slice of the (symmetry-reduced) sign-vector cube.
///
/// Coordinates x_2n, x_{2n-1}, ... are split as
///   [fixed_bits pinned to +1][prefix_bits = prefix_value][free bits walked]
/// from the top down. The free bits follow a reflected Gray code.
struct JobSpec {
  Variant variant = Variant::Skolem;
  int n = 0;
  CountMode mode = CountMode::AllSequences;
  int fixed_bits = 0;
  int multiplier = 1;
  int prefix_bits = 0;
  std::uint64_t prefix_value = 0;
  ModulusSet moduli;

  int free_bits() const noexcept { return 2 * n - fixed_bits - prefix_bits; }
  /// Stable identifier, e.g. "skolem-12-p3-5".
  std::string id() const;
  /// Throws MalformedInput when the fields are inconsistent.
  void validate() const;

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

struct JobResult {
  JobSpec spec;
  /// Sum over the slice of sign(X) F(n, X), modulo each modulus.
  std::vector<std::uint64_t> residues;
  /// Number of polynomial evaluations, 2^free_bits.
  std::uint64_t steps = 0;
  /// The same sum modulo 2^64; an independent fingerprint of the run.
  std::uint64_t checksum = 0;

  friend bool operator==(const JobResult&, const JobResult&) = default;
};

enum class Accumulation {
  Auto,      // exact 128-bit accumulation when products fit, else modular
  Exact128,  // exact per-step values, reduced into residues periodically
  Modular,   // every step reduced modulo each modulus
};

JobResult count_gray(const JobSpec& job, Accumulation path = Accumulation::Auto);

}  // namespace skolem
