#include "skolem/backtrack.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

#include "skolem/error.hpp"

namespace skolem {

namespace {

void check_board_order(int n) {
  if (n < 1) throw MalformedInput("order n must be positive");
  if (n > kMaxBoardOrder) {
    throw CapacityError("order " + std::to_string(n) + " exceeds the 64-slot board");
  }
}

std::uint64_t count_from(OccupancyBoard& board, int r) {
  if (r == 0) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t starts = board.free_starts(r); starts; starts &= starts - 1) {
    board.place(r, std::countr_zero(starts) + 1);
    total += count_from(board, r - 1);
    board.pop();
  }
  return total;
}

// Returns false when the visitor asked to stop.
template <typename Visit>
bool walk(OccupancyBoard& board, int r, Visit& visit) {
  if (r == 0) return visit(board);
  for (std::uint64_t starts = board.free_starts(r); starts; starts &= starts - 1) {
    board.place(r, std::countr_zero(starts) + 1);
    const bool more = walk(board, r - 1, visit);
    board.pop();
    if (!more) return false;
  }
  return true;
}

std::uint64_t count_all(Variant v, int n, unsigned threads) {
  OccupancyBoard root(v, n);
  std::vector<int> shards;
  for (std::uint64_t s = root.free_starts(n); s; s &= s - 1) shards.push_back(std::countr_zero(s) + 1);

  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> total{0};
  auto worker = [&] {
    OccupancyBoard board(v, n);
    std::uint64_t local = 0;
    for (std::size_t i = next++; i < shards.size(); i = next++) {
      board.place(n, shards[i]);
      local += count_from(board, n - 1);
      board.pop();
    }
    total += local;
  };

  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(shards.size(), 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return total.load();
}

}  // namespace

OccupancyBoard::OccupancyBoard(Variant variant, int n)
    : variant_(variant), n_(n), full_mask_(low_bits(2 * n)) {
  check_board_order(n);
}

LabelSequence OccupancyBoard::to_sequence() const {
  std::vector<int> labels(static_cast<std::size_t>(2 * n_), 0);
  for (int i = 0; i < depth_; ++i) {
    const auto& p = stack_[static_cast<std::size_t>(i)];
    labels[static_cast<std::size_t>(p.position - 1)] = p.difference;
    labels[static_cast<std::size_t>(p.position - 1 + separation(variant_, p.difference))] = p.difference;
  }
  return LabelSequence(std::move(labels));
}

std::uint64_t count_exact(Variant v, int n, CountMode mode, unsigned threads) {
  check_board_order(n);
  const int limit = v == Variant::Skolem ? kMaxBacktrackSkolem : kMaxBacktrackLangford;
  if (n > limit) {
    throw CapacityError("backtracking refuses " + std::string(to_string(v)) + " n=" + std::to_string(n) +
                        " (limit " + std::to_string(limit) + "); use the algebraic counter");
  }
  if (!existence(v, n)) return 0;

  const std::uint64_t all = count_all(v, n, threads);
  if (mode == CountMode::AllSequences || n == 1) return all;
  // No valid sequence of order > 1 is its own mirror image, so totals are even.
  if (all % 2 != 0) {
    throw MismatchError("odd total " + std::to_string(all) + " cannot be halved for reflection classes");
  }
  return all / 2;
}

std::uint64_t enumerate(Variant v, int n, const std::function<void(const LabelSequence&)>& visit) {
  check_board_order(n);
  if (n > kMaxEnumerateOrder) {
    throw CapacityError("enumeration is limited to n <= " + std::to_string(kMaxEnumerateOrder));
  }
  OccupancyBoard board(v, n);
  std::uint64_t visited = 0;
  auto on_leaf = [&](const OccupancyBoard& b) {
    visit(b.to_sequence());
    ++visited;
    return true;
  };
  walk(board, n, on_leaf);
  return visited;
}

std::optional<LabelSequence> first_solution(Variant v, int n) {
  check_board_order(n);
  if (!existence(v, n)) return std::nullopt;
  OccupancyBoard board(v, n);
  std::optional<LabelSequence> found;
  auto on_leaf = [&](const OccupancyBoard& b) {
    found = b.to_sequence();
    return false;
  };
  walk(board, n, on_leaf);
  return found;
}

}  // namespace skolem
