#pragma once

// Approximate counting by parallel tempering.
//
// A relaxed configuration places the pair of label k at bins (o_k, o_k + d_k)
// with no exclusion between labels; there are simplified_count(n) of them.
// Its energy is the number of empty bins, zero exactly for valid sequences.
// With Z(beta) = sum_C exp(-beta E(C)) the count is
//
//     Z(inf) = Z(0) * prod_j Z(beta_{j+1}) / Z(beta_j),
//
// and each ratio is the mean of exp(-(beta_{j+1} - beta_j) E) under the chain
// at beta_j. The last ratio Z(inf)/Z(beta_M) is the ground-state hit rate at
// the top level.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skolem/modular.hpp"
#include "skolem/sequence.hpp"

namespace skolem {

using Rng = std::mt19937_64;

/// Independent stream `stream` of run `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// prod_{k=1..n} (2n - d_k): (2n-1)!/(n-1)! for Skolem.
BigInt simplified_count(Variant v, int n);

struct Move {
  int difference = 1;  // label k
  int offset = 1;      // new o_k
};

class Configuration {
 public:
  /// offsets[k-1] = o_k in [1, 2n - d_k].
  Configuration(Variant v, int n, std::vector<int> offsets);
  static Configuration random(Variant v, int n, Rng& rng);

  Variant variant() const noexcept { return variant_; }
  int n() const noexcept { return n_; }
  int bins() const noexcept { return 2 * n_; }
  int offset(int k) const { return offsets_.at(static_cast<std::size_t>(k - 1)); }
  std::span<const int> offsets() const noexcept { return offsets_; }
  int max_offset(int k) const noexcept { return 2 * n_ - separation(variant_, k); }
  /// Balls in bin b (1-based).
  int occupancy(int bin) const { return occupancy_.at(static_cast<std::size_t>(bin - 1)); }
  int energy() const noexcept { return energy_; }

  /// Energy change of `move`, from the at most four touched bins.
  int delta_energy(const Move& move) const noexcept;
  void apply(const Move& move, int delta) noexcept;

  /// Empty bins counted from the offsets alone.
  int recount_energy() const;
  /// Only meaningful at energy 0.
  LabelSequence to_sequence() const;

 private:
  Variant variant_;
  int n_;
  std::vector<int> offsets_;
  std::vector<int> occupancy_;
  int energy_ = 0;
};

/// Label uniform on 1..n, offset uniform on its whole legal range (the
/// current offset included).
Move propose(const Configuration& c, Rng& rng);

/// exp(-beta * dE) for dE = 1, 2; a single move changes the energy by at most 2.
class AcceptanceTable {
 public:
  explicit AcceptanceTable(double beta);
  double beta() const noexcept { return beta_; }
  double probability(int delta) const noexcept {
    return delta <= 0 ? 1.0 : uphill_[static_cast<std::size_t>(delta < 2 ? delta : 2)];
  }

 private:
  double beta_;
  std::array<double, 3> uphill_{};
};

/// One Metropolis update: accept with probability min(1, exp(-beta dE)).
bool metropolis_step(Configuration& c, const AcceptanceTable& table, Rng& rng);
bool metropolis_step(Configuration& c, double beta, Rng& rng);

/// One tempering level: its inverse temperature, current configuration,
/// private random stream and counters.
struct Replica {
  double beta = 0;
  Configuration config;
  Rng rng;
  AcceptanceTable table;
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
  std::uint64_t swap_attempts = 0;  // with the next level up
  std::uint64_t swaps = 0;

  Replica(double b, Configuration c, Rng r) : beta(b), config(std::move(c)), rng(std::move(r)), table(b) {}
};

/// One ascending pass over adjacent levels; configurations (not betas) are
/// exchanged with probability min(1, exp(-(b_{j+1} - b_j)(E_j - E_{j+1}))).
/// Returns the number of exchanges.
int replica_swap(std::span<Replica> levels, Rng& rng);

/// Swap acceptance for the energy difference e_lower - e_upper.
double swap_probability(double beta_lower, double beta_upper, int e_lower, int e_upper) noexcept;

/// Strictly increasing inverse temperatures starting at exactly 0.
class Ladder {
 public:
  Ladder() = default;
  explicit Ladder(std::vector<double> betas);

  std::span<const double> betas() const noexcept { return betas_; }
  std::size_t size() const noexcept { return betas_.size(); }
  double operator[](std::size_t i) const { return betas_.at(i); }

  /// Named presets; "n12" is the twelve-level ladder from 0 to 32 tuned for
  /// Skolem n = 12.
  static Ladder preset(std::string_view name);
  /// Whitespace- or comma-separated betas.
  static Ladder parse(std::string_view text);
  std::string format() const;

 private:
  std::vector<double> betas_;
};

struct LadderOptions {
  double target_swap = 0.5;
  int max_levels = 32;
  double beta_max = 32.0;
  double initial_step = 0.5;
  std::uint64_t pilot_iterations = 1u << 18;
  int bisection_steps = 6;
};

/// Grows the ladder from beta = 0: each step doubles the increment while the
/// pilot-estimated swap acceptance with the previous level stays at or above
/// target_swap, then bisects; ends at beta_max. Throws LadderError with the
/// partial ladder when max_levels is not enough.
Ladder build_ladder(Variant v, int n, const LadderOptions& options, std::uint64_t seed);

struct EstimateOptions {
  std::uint64_t iterations = 1u << 20;
  /// Sweeps discarded before accumulation; negative means iterations / 16.
  std::int64_t burn_in = -1;
  std::uint64_t seed = 1;
  CountMode mode = CountMode::AllSequences;
  /// Compare the cached energy against a recount every this many sweeps
  /// (0 disables). Debug builds default to 10^4.
#ifdef NDEBUG
  std::uint64_t energy_check_every = 0;
#else
  std::uint64_t energy_check_every = 10'000;
#endif
  int batches = 32;
};

struct LevelReport {
  double beta = 0;
  double move_acceptance = 0;  // W1
  double swap_acceptance = 0;  // W2 with the next level; NaN at the top
  double mean_energy = 0;
  double ratio = 0;            // Z(beta_{j+1}) / Z(beta_j), or hit rate at the top
  double ratio_stderr = 0;     // batch means
  std::vector<std::uint64_t> energy_histogram;
};

struct EstimateReport {
  Variant variant = Variant::Skolem;
  int n = 0;
  CountMode mode = CountMode::AllSequences;
  std::vector<LevelReport> levels;
  double estimate = 0;
  double relative_stderr = 0;
  std::uint64_t iterations = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

EstimateReport estimate(Variant v, int n, const Ladder& ladder, const EstimateOptions& options);

struct RepeatSummary {
  std::vector<double> estimates;
  double mean = 0;
  double stddev = 0;  // sample standard deviation
  double median = 0;
};

RepeatSummary repeat_and_average(std::span<const EstimateReport> runs);

/// `runs` estimates with seeds options.seed, options.seed + 1, ..., spread
/// over `threads` workers.
std::vector<EstimateReport> run_repeated(Variant v, int n, const Ladder& ladder, const EstimateOptions& options,
                                         int runs, unsigned threads = 1);

/// Table with columns i, beta, W1, W2, E[e], ratio followed by the estimate.
std::string format_report(const EstimateReport& report);

}  // namespace skolem
