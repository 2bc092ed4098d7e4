#pragma once

// Splitting the algebraic sum into independent jobs, merging their residues,
// and turning the merged residues into a count.

#include <optional>
#include <span>
#include <vector>

#include "skolem/gray.hpp"

namespace skolem {

/// Merged per-modulus sums over the reduced domain.
struct ResidueSet {
  Variant variant = Variant::Skolem;
  int n = 0;
  int multiplier = 1;
  ModulusSet moduli;
  std::vector<std::uint64_t> residues;
  std::uint64_t checksum = 0;
  std::uint64_t steps = 0;
};

/// num_jobs = 2^b jobs fixing the b highest free coordinates to every value.
/// Throws MalformedInput unless num_jobs is a power of two that fits the
/// free coordinates.
std::vector<JobSpec> partition(int n, Variant v, int num_jobs, const ModulusSet& moduli,
                               CountMode mode = CountMode::AllSequences,
                               SymmetryReduction symmetry = {});

/// partition() with symmetry_reduction(n, v) applied and default moduli.
std::vector<JobSpec> partition(int n, Variant v, int num_jobs);

/// Sums residues across a complete, disjoint cover of job slices.
///
/// Several results for the same job are compared; if they disagree and no
/// strict majority of at least two runs agrees, MismatchError names the job.
/// Throws CoverageError on gaps, overlaps, or mixed parameters.
ResidueSet merge(std::span<const JobResult> results);

/// Applies the symmetry multiplier and 1/2^{2n} per modulus, reconstructs
/// the count by CRT and halves it for UpToReflection.
///
/// Throws CapacityError when the modulus product cannot hold the sum, and
/// MismatchError when the reconstruction disagrees with the 2^64 checksum
/// or an odd total would be halved.
BigInt finalize(const ResidueSet& residues, int n, Variant v, CountMode mode);

struct AlgebraicOptions {
  int jobs = 1;              // power of two
  unsigned threads = 1;
  std::optional<ModulusSet> moduli;
  bool use_symmetry = true;
  Accumulation accumulation = Accumulation::Auto;
};

/// partition + count_gray on a worker pool + merge + finalize.
BigInt count_algebraic(Variant v, int n, CountMode mode, const AlgebraicOptions& options = {});

/// Runs every job on up to `threads` workers; results come back in job order.
std::vector<JobResult> run_jobs(std::span<const JobSpec> jobs, unsigned threads,
                                Accumulation accumulation = Accumulation::Auto);

}  // namespace skolem
