#pragma once

// Problem definitions and solution representations shared by every counter.
//
// Positions are 1-based everywhere in the public interface: a sequence of
// order n occupies positions 1..2n, and label r sits at positions a_r and
// a_r + r (Skolem) or a_r + r + 1 (Langford).

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skolem {

enum class Variant { Skolem, Langford };
enum class CountMode { AllSequences, UpToReflection };

/// Distance between the two copies of label r.
constexpr int separation(Variant v, int r) noexcept {
  return v == Variant::Skolem ? r : r + 1;
}

std::string_view to_string(Variant v) noexcept;
std::string_view to_string(CountMode m) noexcept;
/// Accepts "skolem" / "langford" (case-insensitive).
Variant parse_variant(std::string_view text);
/// Accepts "all" / "reflect".
CountMode parse_mode(std::string_view text);

/// True exactly when a valid sequence of order n exists.
bool existence(Variant v, int n);

struct Pair {
  int first = 0;
  int second = 0;
  friend bool operator==(const Pair&, const Pair&) = default;
};

/// Position pairs indexed by label (difference index) r = 1..n. May hold
/// candidate placements that are not valid; see verify().
class PairList {
 public:
  PairList() = default;
  /// pairs[r-1] holds the two positions of label r. Requires 1 <= first < second.
  explicit PairList(std::vector<Pair> pairs);

  int n() const noexcept { return static_cast<int>(pairs_.size()); }
  const Pair& at(int r) const { return pairs_.at(static_cast<std::size_t>(r - 1)); }
  std::span<const Pair> pairs() const noexcept { return pairs_; }

  friend bool operator==(const PairList&, const PairList&) = default;

 private:
  std::vector<Pair> pairs_;
};

/// Length-2n label array in which every label 1..n appears exactly twice.
/// Construction rejects anything else with MalformedInput.
class LabelSequence {
 public:
  LabelSequence() = default;
  explicit LabelSequence(std::vector<int> labels);

  int n() const noexcept { return static_cast<int>(labels_.size() / 2); }
  std::size_t size() const noexcept { return labels_.size(); }
  /// 1-based access.
  int at(int position) const { return labels_.at(static_cast<std::size_t>(position - 1)); }
  std::span<const int> labels() const noexcept { return labels_; }

  friend bool operator==(const LabelSequence&, const LabelSequence&) = default;
  friend auto operator<=>(const LabelSequence&, const LabelSequence&) = default;

 private:
  std::vector<int> labels_;
};

bool verify(const LabelSequence& seq, Variant v);
/// Difference rule plus exact cover of 1..2n.
bool verify(const PairList& pairs, Variant v);

PairList pairs_from_sequence(const LabelSequence& seq);
/// Places every pair; throws MalformedInput unless the positions cover
/// 1..2n exactly once.
LabelSequence sequence_from_pairs(const PairList& pairs);

/// Mirror image: position i moves to 2n + 1 - i.
LabelSequence reflect(const LabelSequence& seq);

/// "4,2,3,2,4,3,1,1"
std::string format_labels(const LabelSequence& seq);
LabelSequence parse_labels(std::string_view text);
/// "(7,8) (3,5) (1,4) (2,6)"
std::string format_pairs(const PairList& pairs);
PairList parse_pairs(std::string_view text);

}  // namespace skolem
