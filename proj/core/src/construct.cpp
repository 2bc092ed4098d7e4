#include "skolem/construct.hpp"

#include "skolem/backtrack.hpp"
#include "skolem/error.hpp"

namespace skolem {

namespace {

// Skolem pairs are collected by difference; a difference outside 1..n or one
// produced twice marks the instantiation as broken.
class PairTable {
 public:
  explicit PairTable(int n) : pairs_(static_cast<std::size_t>(n)) {}

  void add(int a, int b) {
    if (a > b) std::swap(a, b);
    const int r = b - a;
    if (r < 1 || r > static_cast<int>(pairs_.size()) || a < 1) {
      broken_ = true;
      return;
    }
    auto& slot = pairs_[static_cast<std::size_t>(r - 1)];
    if (slot.first != 0) broken_ = true;
    slot = {a, b};
  }

  bool complete() const {
    if (broken_) return false;
    for (const auto& p : pairs_) {
      if (p.first == 0) return false;
    }
    return true;
  }

  std::vector<Pair> take() { return std::move(pairs_); }

 private:
  std::vector<Pair> pairs_;
  bool broken_ = false;
};

// Arithmetic run with step 2 and inclusive bounds; direction is fixed by the
// table, so a descending run with from < to is empty.
void run(std::vector<int>& out, int from, int to, bool descending) {
  if (descending) {
    for (int v = from; v >= to; v -= 2) out.push_back(v);
  } else {
    for (int v = from; v <= to; v += 2) out.push_back(v);
  }
}

constexpr bool kDown = true;
constexpr bool kUp = false;

}  // namespace

namespace formula {

std::optional<PairList> skolem_table(int n) {
  if (n < 1 || !existence(Variant::Skolem, n)) {
    throw ExistenceError("no Skolem table for n=" + std::to_string(n));
  }
  PairTable t(n);
  if (n % 4 == 0) {
    const int k = n / 4;
    for (int r = 0; r <= 2 * k - 1; ++r) t.add(4 * k + r, 8 * k - r);
    t.add(2 * k + 1, 6 * k);
    t.add(2 * k, 4 * k - 1);
    for (int r = 1; r <= k - 1; ++r) t.add(r, 4 * k - 1 - r);
    t.add(k, k + 1);
    for (int r = 0; r <= k - 3; ++r) t.add(k + 2 + r, 3 * k - 1 - r);
  } else {
    const int k = (n - 1) / 4;
    for (int r = 0; r <= 2 * k - 1; ++r) t.add(4 * k + 2 + r, 8 * k + 2 - r);
    t.add(2 * k + 1, 6 * k + 2);
    t.add(2 * k + 2, 4 * k + 1);
    for (int r = 1; r <= k; ++r) t.add(r, 4 * k + 1 - r);
    t.add(k + 1, k + 2);
    for (int r = 1; r <= k - 2; ++r) t.add(k + 2 + r, 3 * k + 1 - r);
  }
  if (!t.complete()) return std::nullopt;
  return PairList(t.take());
}

std::vector<int> langford_table(int n) {
  if (n < 1 || !existence(Variant::Langford, n)) {
    throw ExistenceError("no Langford table for n=" + std::to_string(n));
  }
  std::vector<int> s;
  s.reserve(static_cast<std::size_t>(2 * n));
  if (n % 4 == 3) {
    const int k = (n + 1) / 4;
    run(s, 4 * k - 4, 2 * k, kDown);
    s.push_back(4 * k - 2);
    run(s, 2 * k - 3, 1, kDown);
    s.push_back(4 * k - 1);
    run(s, 1, 2 * k - 3, kUp);
    run(s, 2 * k, 4 * k - 4, kUp);
    s.push_back(2 * k - 1);
    run(s, 4 * k - 3, 2 * k + 1, kDown);
    s.push_back(4 * k - 2);
    run(s, 2 * k - 2, 2, kDown);
    s.push_back(2 * k - 1);
    s.push_back(4 * k - 1);
    run(s, 2, 2 * k - 2, kUp);
    run(s, 2 * k + 1, 4 * k - 3, kUp);
  } else {
    const int k = n / 4;
    run(s, 4 * k - 4, 2 * k, kDown);
    s.push_back(4 * k - 2);
    run(s, 2 * k - 3, 1, kDown);
    s.push_back(4 * k - 1);
    run(s, 1, 2 * k - 3, kUp);
    run(s, 2 * k, 4 * k - 4, kUp);
    s.push_back(4 * k);
    run(s, 4 * k - 3, 2 * k + 1, kDown);
    s.push_back(4 * k - 2);
    run(s, 2 * k - 2, 2, kDown);
    s.push_back(2 * k - 1);
    s.push_back(4 * k - 1);
    run(s, 2, 2 * k - 2, kUp);
    run(s, 2 * k + 1, 4 * k - 3, kUp);
    s.push_back(2 * k - 1);
    s.push_back(4 * k);
  }
  return s;
}

}  // namespace formula

PairList construct_skolem(int n) {
  if (n < 1 || !existence(Variant::Skolem, n)) {
    throw ExistenceError("no Skolem sequence exists for n=" + std::to_string(n) + " (need n = 0,1 mod 4)");
  }
  auto candidate = formula::skolem_table(n);
  if (candidate && verify(*candidate, Variant::Skolem)) return *candidate;
  // Small orders where the table's ranges overlap.
  auto fallback = first_solution(Variant::Skolem, n);
  if (!fallback) throw ExistenceError("no Skolem sequence found for n=" + std::to_string(n));
  return pairs_from_sequence(*fallback);
}

LabelSequence construct_langford(int n) {
  if (n < 1 || !existence(Variant::Langford, n)) {
    throw ExistenceError("no Langford sequence exists for n=" + std::to_string(n) + " (need n = 0,3 mod 4)");
  }
  auto labels = formula::langford_table(n);
  try {
    LabelSequence candidate(std::move(labels));
    if (verify(candidate, Variant::Langford)) return candidate;
  } catch (const MalformedInput&) {
  }
  auto fallback = first_solution(Variant::Langford, n);
  if (!fallback) throw ExistenceError("no Langford sequence found for n=" + std::to_string(n));
  return *fallback;
}

}  // namespace skolem
