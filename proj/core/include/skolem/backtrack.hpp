#pragma once

// Exhaustive placement search. Pairs are placed from the largest difference
// down to 1, each at every free position scanning left to right. This is the
// ground-truth counter for small n.

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>

#include "skolem/sequence.hpp"

namespace skolem {

inline constexpr int kMaxBoardOrder = 32;  // 2n <= 64 slots
inline constexpr int kMaxBacktrackSkolem = 21;
inline constexpr int kMaxBacktrackLangford = 24;
inline constexpr int kMaxEnumerateOrder = 13;

/// 2n occupancy slots in one machine word plus the stack of placed pairs.
/// Bit i of the word stands for position i + 1.
class OccupancyBoard {
 public:
  struct Placement {
    int difference;  // label r
    int position;    // a_r, 1-based
  };

  OccupancyBoard(Variant variant, int n);

  int n() const noexcept { return n_; }
  Variant variant() const noexcept { return variant_; }
  std::uint64_t occupied() const noexcept { return occupied_; }
  bool is_occupied(int position) const noexcept { return (occupied_ >> (position - 1)) & 1u; }
  bool full() const noexcept { return occupied_ == full_mask_; }
  int depth() const noexcept { return depth_; }
  const Placement& placed(int i) const { return stack_.at(static_cast<std::size_t>(i)); }

  /// Bit set of 0-based start slots where label r fits right now.
  std::uint64_t free_starts(int r) const noexcept {
    const int d = separation(variant_, r);
    const std::uint64_t range = low_bits(2 * n_ - d);
    return ~occupied_ & ~(occupied_ >> d) & range;
  }

  void place(int r, int position) noexcept {
    const int d = separation(variant_, r);
    occupied_ |= (std::uint64_t{1} << (position - 1)) | (std::uint64_t{1} << (position - 1 + d));
    stack_[static_cast<std::size_t>(depth_++)] = {r, position};
  }

  void pop() noexcept {
    const auto& p = stack_[static_cast<std::size_t>(--depth_)];
    const int d = separation(variant_, p.difference);
    occupied_ &= ~((std::uint64_t{1} << (p.position - 1)) | (std::uint64_t{1} << (p.position - 1 + d)));
  }

  /// Labels of the current (complete) placement.
  LabelSequence to_sequence() const;

 private:
  static constexpr std::uint64_t low_bits(int count) noexcept {
    return count <= 0 ? 0 : (count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
  }

  Variant variant_;
  int n_;
  std::uint64_t full_mask_;
  std::uint64_t occupied_ = 0;
  int depth_ = 0;
  std::array<Placement, kMaxBoardOrder> stack_{};
};

/// Exact number of sequences. Refuses n above kMaxBacktrackSkolem (Skolem)
/// or kMaxBacktrackLangford (Langford) with CapacityError. With threads > 1
/// the search is sharded by the position of the largest pair.
std::uint64_t count_exact(Variant v, int n, CountMode mode, unsigned threads = 1);

/// Calls visit once per valid sequence, counting reflections as distinct, in
/// search order. Returns the number of sequences visited. n <= kMaxEnumerateOrder.
std::uint64_t enumerate(Variant v, int n, const std::function<void(const LabelSequence&)>& visit);

/// First sequence in search order, if any.
std::optional<LabelSequence> first_solution(Variant v, int n);

}  // namespace skolem
