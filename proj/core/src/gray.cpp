#include "skolem/gray.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "skolem/error.hpp"

namespace skolem {

namespace {

__extension__ typedef __int128 int128;

// |s_i| <= 2n - 1 <= 63, so ten factors stay below 2^60.
constexpr int kChunk = 10;

// Exact accumulation is used while the largest possible |F| stays below this.
constexpr double kExactLog2Limit = 100.0;

double log2_max_product(Variant v, int n) {
  double bits = 0;
  for (int i = 1; i <= n; ++i) bits += std::log2(static_cast<double>(factor_terms(v, n, i)));
  return bits;
}

std::uint64_t reduce(int128 value, std::uint64_t m) {
  const auto r = static_cast<std::int64_t>(value % static_cast<int128>(m));
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

std::uint64_t reduce(std::int64_t value, std::uint64_t m) {
  const std::int64_t r = value % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

// Visits the start vector and then every Gray successor over the low
// `free_bits` coordinates.
template <typename OnVector>
void walk(GrayState& state, int free_bits, OnVector&& on_vector) {
  on_vector();
  const std::uint64_t steps = std::uint64_t{1} << free_bits;
  for (std::uint64_t t = 1; t < steps; ++t) {
    state.flip(std::countr_zero(t) + 1);
    on_vector();
  }
}

class ExactAccumulator {
 public:
  ExactAccumulator(const ModulusSet& moduli, double log2_bound)
      : moduli_(moduli), residues_(moduli.size(), 0) {
    const int headroom = 125 - static_cast<int>(std::ceil(log2_bound));
    flush_every_ = std::uint64_t{1} << std::clamp(headroom, 0, 62);
  }

  void add(int128 term) noexcept {
    acc_ += term;
    checksum_ += static_cast<std::uint64_t>(term);
    if (++pending_ == flush_every_) flush();
  }

  void flush() noexcept {
    for (std::size_t i = 0; i < residues_.size(); ++i) {
      const std::uint64_t m = moduli_.modulus(i);
      residues_[i] = (residues_[i] + reduce(acc_, m)) % m;
    }
    acc_ = 0;
    pending_ = 0;
  }

  std::vector<std::uint64_t> residues() && { return std::move(residues_); }
  std::uint64_t checksum() const noexcept { return checksum_; }

 private:
  const ModulusSet& moduli_;
  std::vector<std::uint64_t> residues_;
  int128 acc_ = 0;
  std::uint64_t pending_ = 0;
  std::uint64_t flush_every_ = 1;
  std::uint64_t checksum_ = 0;
};

}  // namespace

GrayState::GrayState(Variant v, int n, const SignVector& start) : variant_(v), n_(n) {
  if (n < 1 || n > kMaxAlgebraicOrder) throw CapacityError("Gray walk supports 1 <= n <= 32");
  if (start.n() != n) throw MalformedInput("sign vector order does not match n");
  for (int k = 1; k <= 2 * n; ++k) x_[static_cast<std::size_t>(k + kPad)] = static_cast<std::int8_t>(start.value(k));
  for (int i = 1; i <= n; ++i) seps_[static_cast<std::size_t>(i - 1)] = separation(v, i);
  sign_ = start.sign();
  const auto sums = recompute_sums();
  std::copy(sums.begin(), sums.end(), sums_.begin());
}

SignVector GrayState::x() const {
  std::uint64_t bits = 0;
  for (int k = 1; k <= 2 * n_; ++k) {
    if (x_[static_cast<std::size_t>(k + kPad)] < 0) bits |= std::uint64_t{1} << (k - 1);
  }
  return SignVector(n_, bits);
}

std::vector<int> GrayState::recompute_sums() const {
  std::vector<int> sums(static_cast<std::size_t>(n_), 0);
  for (int i = 1; i <= n_; ++i) {
    const int d = separation(variant_, i);
    for (int k = 1; k + d <= 2 * n_; ++k) {
      sums[static_cast<std::size_t>(i - 1)] +=
          x_[static_cast<std::size_t>(k + kPad)] * x_[static_cast<std::size_t>(k + d + kPad)];
    }
  }
  return sums;
}

std::string JobSpec::id() const {
  return std::string(to_string(variant)) + "-" + std::to_string(n) + "-p" + std::to_string(prefix_bits) + "-" +
         std::to_string(prefix_value);
}

void JobSpec::validate() const {
  if (n < 1 || n > kMaxAlgebraicOrder) throw MalformedInput("job order must be in 1..32");
  if (fixed_bits < 0 || prefix_bits < 0 || free_bits() < 0) throw MalformedInput("job bit split exceeds 2n");
  if (free_bits() > 62) throw CapacityError("a single job may walk at most 2^62 vectors; split further");
  if (prefix_bits < 64 && prefix_value >> prefix_bits) throw MalformedInput("prefix value wider than prefix bits");
  if (multiplier < 1) throw MalformedInput("symmetry multiplier must be positive");
  if (moduli.n() != n || moduli.size() == 0) throw MalformedInput("modulus set does not belong to this order");
}

JobResult count_gray(const JobSpec& job, Accumulation path) {
  job.validate();
  const int n = job.n;
  const int free = job.free_bits();
  const double log2_bound = log2_max_product(job.variant, n);
  if (path == Accumulation::Auto) {
    path = log2_bound <= kExactLog2Limit ? Accumulation::Exact128 : Accumulation::Modular;
  }
  if (path == Accumulation::Exact128 && log2_bound > kExactLog2Limit) {
    throw CapacityError("products for n=" + std::to_string(n) + " do not fit exact 128-bit accumulation");
  }

  GrayState state(job.variant, n, SignVector(n, job.prefix_value << free));
  const int* s = state.sums().data();

  JobResult result;
  result.spec = job;
  result.steps = std::uint64_t{1} << free;

  if (path == Accumulation::Exact128) {
    ExactAccumulator acc(job.moduli, log2_bound);
    walk(state, free, [&] {
      std::int64_t head = 1;
      int i = 0;
      for (const int e = std::min(n, kChunk); i < e; ++i) head *= s[i];
      if (head == 0) return;
      int128 product = head;
      while (i < n) {
        std::int64_t chunk = 1;
        for (const int e = std::min(n, i + kChunk); i < e; ++i) chunk *= s[i];
        if (chunk == 0) return;
        product *= chunk;
      }
      acc.add(state.sign() > 0 ? product : -product);
    });
    acc.flush();
    result.checksum = acc.checksum();
    result.residues = std::move(acc).residues();
    return result;
  }

  const std::size_t m_count = job.moduli.size();
  std::vector<std::uint64_t> residues(m_count, 0);
  std::vector<std::uint64_t> partial(m_count);
  std::uint64_t checksum = 0;
  walk(state, free, [&] {
    std::uint64_t wrapped = 1;
    std::fill(partial.begin(), partial.end(), 1);
    for (int i = 0; i < n;) {
      std::int64_t chunk = 1;
      for (const int e = std::min(n, i + kChunk); i < e; ++i) chunk *= s[i];
      if (chunk == 0) return;
      wrapped *= static_cast<std::uint64_t>(chunk);
      for (std::size_t k = 0; k < m_count; ++k) {
        const std::uint64_t m = job.moduli.modulus(k);
        partial[k] = mulmod(partial[k], reduce(chunk, m), m);
      }
    }
    const bool positive = state.sign() > 0;
    checksum += positive ? wrapped : std::uint64_t{0} - wrapped;
    for (std::size_t k = 0; k < m_count; ++k) {
      const std::uint64_t m = job.moduli.modulus(k);
      residues[k] = (residues[k] + (positive ? partial[k] : (m - partial[k]) % m)) % m;
    }
  });
  result.checksum = checksum;
  result.residues = std::move(residues);
  return result;
}

}  // namespace skolem
