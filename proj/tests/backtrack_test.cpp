#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "skolem/backtrack.hpp"
#include "skolem/error.hpp"

namespace skolem {
namespace {

TEST(Board, PopRestoresState) {
  OccupancyBoard board(Variant::Skolem, 4);
  EXPECT_EQ(board.free_starts(4), 0b1111u);
  board.place(4, 1);
  EXPECT_TRUE(board.is_occupied(1));
  EXPECT_TRUE(board.is_occupied(5));
  const auto before = board.occupied();
  board.place(1, 2);
  board.pop();
  EXPECT_EQ(board.occupied(), before);
  board.pop();
  EXPECT_EQ(board.occupied(), 0u);
  EXPECT_EQ(board.depth(), 0);
}

TEST(Board, FreeStartsRespectsBothEnds) {
  OccupancyBoard board(Variant::Langford, 3);
  board.place(3, 1);  // positions 1 and 5
  // label 1 needs slots p and p + 2: starts 2 and 4 remain
  EXPECT_EQ(board.free_starts(1), 0b1010u);
}

TEST(CountExact, PublishedValues) {
  for (const auto& [n, count] : oracle::skolem_reflect_counts()) {
    if (n > 13) break;
    EXPECT_EQ(std::to_string(count_exact(Variant::Skolem, n, CountMode::UpToReflection)), count) << n;
  }
  for (const auto& [n, count] : oracle::langford_reflect_counts()) {
    if (n > 12) break;
    EXPECT_EQ(std::to_string(count_exact(Variant::Langford, n, CountMode::UpToReflection)), count) << n;
  }
}

TEST(CountExact, SpecExamples) {
  EXPECT_EQ(count_exact(Variant::Skolem, 6, CountMode::AllSequences), 0u);
  EXPECT_EQ(count_exact(Variant::Skolem, 9, CountMode::AllSequences), 2656u);
  EXPECT_EQ(count_exact(Variant::Langford, 11, CountMode::UpToReflection), 17792u);
}

TEST(CountExact, MatchesBruteForce) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(count_exact(Variant::Skolem, n, CountMode::AllSequences), oracle::brute_force_count(Variant::Skolem, n));
    EXPECT_EQ(count_exact(Variant::Langford, n, CountMode::AllSequences),
              oracle::brute_force_count(Variant::Langford, n));
  }
}

TEST(CountExact, ReflectionHalves) {
  for (int n = 2; n <= 12; ++n) {
    for (Variant v : {Variant::Skolem, Variant::Langford}) {
      EXPECT_EQ(count_exact(v, n, CountMode::AllSequences), 2 * count_exact(v, n, CountMode::UpToReflection));
    }
  }
  EXPECT_EQ(count_exact(Variant::Skolem, 1, CountMode::UpToReflection), 1u);
}

TEST(CountExact, ShardedEqualsSequential) {
  EXPECT_EQ(count_exact(Variant::Skolem, 12, CountMode::AllSequences, 3),
            count_exact(Variant::Skolem, 12, CountMode::AllSequences, 1));
  EXPECT_EQ(count_exact(Variant::Langford, 11, CountMode::AllSequences, 4),
            count_exact(Variant::Langford, 11, CountMode::AllSequences, 1));
}

TEST(CountExact, ExistenceAgrees) {
  for (int n = 1; n <= 12; ++n) {
    EXPECT_EQ(existence(Variant::Skolem, n), count_exact(Variant::Skolem, n, CountMode::AllSequences) > 0);
    EXPECT_EQ(existence(Variant::Langford, n), count_exact(Variant::Langford, n, CountMode::AllSequences) > 0);
  }
}

TEST(CountExact, Guards) {
  EXPECT_THROW(count_exact(Variant::Skolem, kMaxBacktrackSkolem + 1, CountMode::AllSequences), CapacityError);
  EXPECT_THROW(count_exact(Variant::Langford, kMaxBacktrackLangford + 1, CountMode::AllSequences), CapacityError);
  EXPECT_THROW(enumerate(Variant::Skolem, kMaxEnumerateOrder + 1, [](const LabelSequence&) {}), CapacityError);
}

TEST(Enumerate, SkolemFourListsSix) {
  std::set<LabelSequence> seen;
  enumerate(Variant::Skolem, 4, [&](const LabelSequence& s) { seen.insert(s); });
  std::set<LabelSequence> expected;
  for (const auto& labels : oracle::brute_force_sequences(Variant::Skolem, 4)) expected.emplace(labels);
  EXPECT_EQ(seen.size(), 6u);
  EXPECT_EQ(seen, expected);
  EXPECT_TRUE(seen.count(LabelSequence({4, 2, 3, 2, 4, 3, 1, 1})));
}

TEST(Enumerate, LangfordThreeIsMirrorPair) {
  std::vector<LabelSequence> seen;
  enumerate(Variant::Langford, 3, [&](const LabelSequence& s) { seen.push_back(s); });
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(reflect(seen[0]), seen[1]);
}

TEST(Enumerate, NoneWhenInadmissible) {
  EXPECT_EQ(enumerate(Variant::Skolem, 2, [](const LabelSequence&) { FAIL(); }), 0u);
  EXPECT_FALSE(first_solution(Variant::Skolem, 7).has_value());
}

TEST(Enumerate, ValidDistinctAndMatchesCount) {
  for (int n = 1; n <= 9; ++n) {
    for (Variant v : {Variant::Skolem, Variant::Langford}) {
      std::set<LabelSequence> seen;
      const auto visited = enumerate(v, n, [&](const LabelSequence& s) {
        EXPECT_TRUE(verify(s, v));
        seen.insert(s);
      });
      EXPECT_EQ(visited, seen.size());
      EXPECT_EQ(visited, count_exact(v, n, CountMode::AllSequences));
    }
  }
}

}  // namespace
}  // namespace skolem
