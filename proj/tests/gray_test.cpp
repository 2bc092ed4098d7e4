#include <gtest/gtest.h>

#include <bit>

#include "skolem/algebraic.hpp"
#include "skolem/error.hpp"
#include "skolem/gray.hpp"
#include "skolem/jobs.hpp"

namespace skolem {
namespace {

JobSpec whole_cube(Variant v, int n) {
  JobSpec job;
  job.variant = v;
  job.n = n;
  job.moduli = ModulusSet::defaults(n);
  return job;
}

TEST(GrayState, IncrementalMatchesRecompute) {
  const int n = 12;
  GrayState state(Variant::Skolem, n, SignVector(n, 0x5a5a5a));
  for (std::uint64_t step = 1; step <= 100'000; ++step) {
    state.flip(std::countr_zero(step) + 1);
    const auto sums = state.sums();
    const auto fresh = state.recompute_sums();
    ASSERT_TRUE(std::equal(sums.begin(), sums.end(), fresh.begin())) << "step " << step;
    for (int i = 1; i <= n; ++i) {
      const int k = factor_terms(Variant::Skolem, n, i);
      ASSERT_LE(std::abs(sums[static_cast<std::size_t>(i - 1)]), k);
      ASSERT_EQ((sums[static_cast<std::size_t>(i - 1)] - k) % 2, 0);
    }
  }
}

TEST(GrayState, LangfordAndSign) {
  GrayState state(Variant::Langford, 7, SignVector::all_plus(7));
  EXPECT_EQ(state.sign(), 1);
  for (int p : {1, 14, 7, 3, 1}) {
    state.flip(p);
    const auto fresh = state.recompute_sums();
    EXPECT_TRUE(std::equal(state.sums().begin(), state.sums().end(), fresh.begin()));
  }
  EXPECT_EQ(state.sign(), -1);
  EXPECT_EQ(state.x().bits(), (1u << 13) | (1u << 6) | (1u << 2));
}

TEST(CountGray, WholeCubeAtFour) {
  const JobResult r = count_gray(whole_cube(Variant::Skolem, 4));
  EXPECT_EQ(r.steps, 256u);
  EXPECT_EQ(crt(r.residues, r.spec.moduli.moduli()), 1536);
  EXPECT_EQ(r.checksum, 1536u);
}

TEST(CountGray, HalvesAddUp) {
  const auto whole = count_gray(whole_cube(Variant::Langford, 7));
  const auto halves = partition(7, Variant::Langford, 2, ModulusSet::defaults(7), CountMode::AllSequences, kNoSymmetry);
  ASSERT_EQ(halves.size(), 2u);
  const auto a = count_gray(halves[0]);
  const auto b = count_gray(halves[1]);
  for (std::size_t i = 0; i < whole.residues.size(); ++i) {
    EXPECT_EQ((a.residues[i] + b.residues[i]) % whole.spec.moduli.modulus(i), whole.residues[i]);
  }
  EXPECT_EQ(a.checksum + b.checksum, whole.checksum);
}

TEST(CountGray, ExactAndModularPathsAgree) {
  for (auto [v, n] : {std::pair{Variant::Skolem, 9}, std::pair{Variant::Langford, 8}}) {
    for (const auto& job : partition(n, v, 4)) {
      const auto exact = count_gray(job, Accumulation::Exact128);
      const auto modular = count_gray(job, Accumulation::Modular);
      EXPECT_EQ(exact, modular) << job.id();
    }
  }
}

TEST(CountGray, EqualsNaiveForSmallOrders) {
  for (int n = 1; n <= 9; ++n) {
    for (Variant v : {Variant::Skolem, Variant::Langford}) {
      if (!existence(v, n)) continue;
      const auto r = count_gray(whole_cube(v, n));
      EXPECT_EQ(crt(r.residues, r.spec.moduli.moduli()), count_naive(n, v, CountMode::AllSequences) << (2 * n)) << n;
    }
  }
}

TEST(JobSpec, IdAndValidation) {
  auto jobs = partition(12, Variant::Skolem, 4);
  EXPECT_EQ(jobs[3].id(), "skolem-12-p2-3");
  EXPECT_NO_THROW(jobs[3].validate());
  jobs[3].prefix_value = 4;
  EXPECT_THROW(jobs[3].validate(), MalformedInput);
  JobSpec big = whole_cube(Variant::Skolem, 32);
  EXPECT_THROW(big.validate(), CapacityError);
}

}  // namespace
}  // namespace skolem
