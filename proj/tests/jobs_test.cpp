#include <gtest/gtest.h>

#include "oracles.hpp"
#include "skolem/backtrack.hpp"
#include "skolem/error.hpp"
#include "skolem/jobs.hpp"

namespace skolem {
namespace {

ModulusSet second_moduli(int n) {
  // Primes disjoint from the default set.
  std::vector<std::uint32_t> primes;
  for (std::uint32_t p = 1'000'000'007u; primes.size() < 8; p += 2) {
    if (is_prime(p)) primes.push_back(p);
  }
  return ModulusSet(n, primes);
}

TEST(Partition, ShapeAndErrors) {
  const auto jobs = partition(12, Variant::Skolem, 4);
  ASSERT_EQ(jobs.size(), 4u);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    EXPECT_EQ(jobs[i].fixed_bits, 2);
    EXPECT_EQ(jobs[i].multiplier, 4);
    EXPECT_EQ(jobs[i].prefix_bits, 2);
    EXPECT_EQ(jobs[i].prefix_value, i);
    EXPECT_EQ(jobs[i].free_bits(), 20);
  }
  EXPECT_EQ(partition(12, Variant::Skolem, 1).front().prefix_bits, 0);
  EXPECT_THROW(partition(12, Variant::Skolem, 3), MalformedInput);
  EXPECT_THROW(partition(12, Variant::Skolem, 0), MalformedInput);
  EXPECT_THROW(partition(2, Variant::Skolem, 16), MalformedInput);
}

TEST(Pipeline, AgreesWithBacktrackForSmallOrders) {
  for (int n = 1; n <= 10; ++n) {
    for (Variant v : {Variant::Skolem, Variant::Langford}) {
      const auto expected = count_exact(v, n, CountMode::AllSequences);
      for (int jobs : {1, 2, 8}) {
        if (jobs > 1 << (2 * n - symmetry_reduction(n, v).fixed_bits)) continue;
        AlgebraicOptions options;
        options.jobs = jobs;
        EXPECT_EQ(count_algebraic(v, n, CountMode::AllSequences, options), expected) << n << " x" << jobs;
      }
      AlgebraicOptions plain;
      plain.use_symmetry = false;
      EXPECT_EQ(count_algebraic(v, n, CountMode::AllSequences, plain), expected) << n;
    }
  }
}

TEST(Pipeline, InadmissibleIsZero) {
  EXPECT_EQ(count_algebraic(Variant::Skolem, 6, CountMode::AllSequences), 0);
  EXPECT_EQ(count_algebraic(Variant::Skolem, 7, CountMode::UpToReflection), 0);
  EXPECT_EQ(count_algebraic(Variant::Langford, 6, CountMode::AllSequences), 0);
}

TEST(Pipeline, PublishedValues) {
  for (const auto& [n, count] : oracle::skolem_reflect_counts()) {
    if (n > 12) break;
    EXPECT_EQ(count_algebraic(Variant::Skolem, n, CountMode::UpToReflection).str(), count);
  }
  for (const auto& [n, count] : oracle::langford_reflect_counts()) {
    if (n > 12) break;
    EXPECT_EQ(count_algebraic(Variant::Langford, n, CountMode::UpToReflection).str(), count);
  }
}

TEST(Pipeline, LangfordElevenInEightJobs) {
  AlgebraicOptions options;
  options.jobs = 8;
  options.threads = 2;
  EXPECT_EQ(count_algebraic(Variant::Langford, 11, CountMode::UpToReflection, options), 17792);
}

TEST(Pipeline, DisjointModulusSetsAgree) {
  for (auto [v, n] : {std::pair{Variant::Skolem, 9}, std::pair{Variant::Langford, 11}, std::pair{Variant::Skolem, 12}}) {
    AlgebraicOptions a, b;
    b.moduli = second_moduli(n);
    b.accumulation = Accumulation::Modular;
    EXPECT_EQ(count_algebraic(v, n, CountMode::AllSequences, a), count_algebraic(v, n, CountMode::AllSequences, b));
  }
}

TEST(Merge, FourJobsEqualOne) {
  const auto one = run_jobs(partition(12, Variant::Skolem, 1), 1);
  const auto four = run_jobs(partition(12, Variant::Skolem, 4), 2);
  const auto a = merge(one);
  const auto b = merge(four);
  EXPECT_EQ(a.residues, b.residues);
  EXPECT_EQ(a.checksum, b.checksum);
  EXPECT_EQ(finalize(b, 12, Variant::Skolem, CountMode::UpToReflection), 227968);
}

class MergeFaults : public ::testing::Test {
 protected:
  void SetUp() override { results = run_jobs(partition(8, Variant::Skolem, 4), 1); }
  std::vector<JobResult> results;
};

TEST_F(MergeFaults, MissingPrefix) {
  results.erase(results.begin() + 2);
  EXPECT_THROW(merge(results), CoverageError);
}

TEST_F(MergeFaults, Overlap) {
  auto coarse = run_jobs(partition(8, Variant::Skolem, 2), 1);
  results.push_back(coarse[0]);
  EXPECT_THROW(merge(results), CoverageError);
}

TEST_F(MergeFaults, MixedModuli) {
  auto other = run_jobs(partition(8, Variant::Skolem, 4, second_moduli(8), CountMode::AllSequences,
                                  symmetry_reduction(8, Variant::Skolem)),
                        1);
  results[1] = other[1];
  EXPECT_THROW(merge(results), CoverageError);
}

TEST_F(MergeFaults, AgreeingDuplicatesAreFine) {
  auto doubled = results;
  doubled.insert(doubled.end(), results.begin(), results.end());
  EXPECT_EQ(finalize(merge(doubled), 8, Variant::Skolem, CountMode::UpToReflection), 252);
}

TEST_F(MergeFaults, CorruptedDuplicateNamesJob) {
  auto corrupted = results[1];
  corrupted.residues[0] = (corrupted.residues[0] + 1) % corrupted.spec.moduli.modulus(0);
  auto all = results;
  all.push_back(corrupted);
  try {
    merge(all);
    FAIL() << "mismatch not detected";
  } catch (const MismatchError& e) {
    EXPECT_NE(std::string(e.what()).find(results[1].spec.id()), std::string::npos) << e.what();
  }
  // A third run settles it.
  all.push_back(results[1]);
  EXPECT_EQ(finalize(merge(all), 8, Variant::Skolem, CountMode::UpToReflection), 252);
}

TEST_F(MergeFaults, SingleCorruptionCaughtByChecksum) {
  results[0].residues[1] = (results[0].residues[1] + 7) % results[0].spec.moduli.modulus(1);
  EXPECT_THROW(finalize(merge(results), 8, Variant::Skolem, CountMode::AllSequences), MismatchError);
}

TEST(Finalize, TinyModuliRefused) {
  const ModulusSet tiny(8, {2147483647u});
  const auto results = run_jobs(
      partition(8, Variant::Skolem, 1, tiny, CountMode::AllSequences, symmetry_reduction(8, Variant::Skolem)), 1);
  EXPECT_THROW(finalize(merge(results), 8, Variant::Skolem, CountMode::AllSequences), CapacityError);
  // The same guard for n = 16, without running anything.
  ResidueSet rs;
  rs.n = 16;
  rs.moduli = ModulusSet(16, {2147483647u, 2147483629u});
  rs.residues = {0, 0};
  EXPECT_THROW(finalize(rs, 16, Variant::Skolem, CountMode::AllSequences), CapacityError);
}

TEST(LargeOrders, AcceptedWithoutRunning) {
  for (auto [v, n] : {std::pair{Variant::Skolem, 29}, std::pair{Variant::Langford, 28}, std::pair{Variant::Skolem, 32}}) {
    const auto jobs = partition(n, v, 1 << 10);
    EXPECT_EQ(jobs.size(), 1024u);
    for (const auto& job : jobs) EXPECT_NO_THROW(job.validate());
  }
}

}  // namespace
}  // namespace skolem
