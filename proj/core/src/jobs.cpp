#include "skolem/jobs.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "skolem/error.hpp"

namespace skolem {

namespace {

__extension__ typedef unsigned __int128 uint128;

bool same_outcome(const JobResult& a, const JobResult& b) {
  return a.residues == b.residues && a.checksum == b.checksum && a.steps == b.steps;
}

// Picks the agreed result among duplicate runs of one job.
const JobResult& resolve_duplicates(const std::vector<const JobResult*>& runs) {
  if (runs.size() == 1) return *runs.front();
  for (const auto* candidate : runs) {
    const auto agreeing = std::count_if(runs.begin(), runs.end(),
                                        [&](const JobResult* r) { return same_outcome(*candidate, *r); });
    if (agreeing >= 2 && 2 * static_cast<std::size_t>(agreeing) > runs.size()) return *candidate;
  }
  throw MismatchError("job " + runs.front()->spec.id() + ": " + std::to_string(runs.size()) +
                      " runs disagree on residues/checksum; run the job again to establish a majority");
}

}  // namespace

std::vector<JobSpec> partition(int n, Variant v, int num_jobs, const ModulusSet& moduli, CountMode mode,
                               SymmetryReduction symmetry) {
  if (num_jobs < 1 || !std::has_single_bit(static_cast<unsigned>(num_jobs))) {
    throw MalformedInput("job count " + std::to_string(num_jobs) + " is not a power of two");
  }
  const int prefix_bits = std::countr_zero(static_cast<unsigned>(num_jobs));
  if (prefix_bits > 2 * n - symmetry.fixed_bits) {
    throw MalformedInput("cannot split " + std::to_string(2 * n - symmetry.fixed_bits) + " free coordinates into " +
                         std::to_string(num_jobs) + " jobs");
  }
  std::vector<JobSpec> jobs;
  jobs.reserve(static_cast<std::size_t>(num_jobs));
  for (int value = 0; value < num_jobs; ++value) {
    JobSpec job{v, n, mode, symmetry.fixed_bits, symmetry.multiplier, prefix_bits,
                static_cast<std::uint64_t>(value), moduli};
    job.validate();
    jobs.push_back(std::move(job));
  }
  return jobs;
}

std::vector<JobSpec> partition(int n, Variant v, int num_jobs) {
  return partition(n, v, num_jobs, ModulusSet::defaults(n), CountMode::AllSequences, symmetry_reduction(n, v));
}

ResidueSet merge(std::span<const JobResult> results) {
  if (results.empty()) throw CoverageError("no job results to merge");
  const JobSpec& ref = results.front().spec;
  std::map<std::pair<int, std::uint64_t>, std::vector<const JobResult*>> by_job;
  for (const auto& r : results) {
    const JobSpec& s = r.spec;
    if (s.variant != ref.variant || s.n != ref.n || s.fixed_bits != ref.fixed_bits ||
        s.multiplier != ref.multiplier || s.mode != ref.mode) {
      throw CoverageError("job " + s.id() + " does not share variant/n/symmetry/mode with " + ref.id());
    }
    if (!(s.moduli == ref.moduli)) throw CoverageError("job " + s.id() + " uses a different modulus set");
    if (r.residues.size() != s.moduli.size()) throw CoverageError("job " + s.id() + " has the wrong residue count");
    by_job[{s.prefix_bits, s.prefix_value}].push_back(&r);
  }

  // Each job is the interval [v, v+1) * 2^{F-b} of the 2^F reduced vectors.
  const int reduced_bits = 2 * ref.n - ref.fixed_bits;
  struct Span {
    uint128 begin, end;
    const JobResult* result;
  };
  std::vector<Span> spans;
  for (const auto& [key, runs] : by_job) {
    const auto& chosen = resolve_duplicates(runs);
    const int width = reduced_bits - key.first;
    spans.push_back({uint128{key.second} << width, uint128{key.second + 1} << width, &chosen});
  }
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.begin < b.begin; });

  ResidueSet merged{ref.variant, ref.n, ref.multiplier, ref.moduli, std::vector<std::uint64_t>(ref.moduli.size(), 0),
                    0, 0};
  uint128 cursor = 0;
  for (const auto& span : spans) {
    if (span.begin < cursor) throw CoverageError("job " + span.result->spec.id() + " overlaps another job");
    if (span.begin > cursor) throw CoverageError("missing coverage before job " + span.result->spec.id());
    cursor = span.end;
    for (std::size_t i = 0; i < merged.residues.size(); ++i) {
      const std::uint64_t m = merged.moduli.modulus(i);
      merged.residues[i] = (merged.residues[i] + span.result->residues[i]) % m;
    }
    merged.checksum += span.result->checksum;
    merged.steps += span.result->steps;
  }
  if (cursor != uint128{1} << reduced_bits) throw CoverageError("job results do not cover the final slice");
  return merged;
}

BigInt finalize(const ResidueSet& rs, int n, Variant v, CountMode mode) {
  if (rs.n != n || rs.variant != v) throw CoverageError("residues belong to a different (variant, n)");
  if (rs.moduli.n() != n || rs.residues.size() != rs.moduli.size()) throw MalformedInput("inconsistent residue set");
  const BigInt needed = 2 * accumulation_bound(n);
  if (rs.moduli.product() <= needed) {
    throw CapacityError("modulus product " + rs.moduli.product().str() + " is too small for n=" + std::to_string(n) +
                        " (needs > " + needed.str() + ")");
  }

  std::vector<std::uint64_t> counts(rs.residues.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::uint64_t m = rs.moduli.modulus(i);
    const std::uint64_t scaled = mulmod(rs.residues[i] % m, static_cast<std::uint64_t>(rs.multiplier) % m, m);
    counts[i] = mulmod(scaled, rs.moduli.inverse_pow2(i), m);
  }
  BigInt count = crt(counts, rs.moduli.moduli());

  // count * 2^{2n} must equal multiplier * (exact reduced sum), which we also
  // hold modulo 2^64.
  const BigInt low64 = (BigInt(1) << 64) - 1;
  const BigInt lhs = (count << (2 * n)) & low64;
  const BigInt rhs = (BigInt(rs.multiplier) * rs.checksum) & low64;
  if (lhs != rhs) {
    throw MismatchError("CRT reconstruction " + count.str() + " disagrees with the 2^64 checksum");
  }

  if (mode == CountMode::UpToReflection && n > 1) {
    if (count % 2 != 0) throw MismatchError("odd total " + count.str() + " cannot be halved for reflection classes");
    count /= 2;
  }
  return count;
}

std::vector<JobResult> run_jobs(std::span<const JobSpec> jobs, unsigned threads, Accumulation accumulation) {
  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = count_gray(jobs[i], accumulation);
  };
  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return results;
}

BigInt count_algebraic(Variant v, int n, CountMode mode, const AlgebraicOptions& options) {
  const ModulusSet moduli = options.moduli ? *options.moduli : ModulusSet::defaults(n);
  const SymmetryReduction symmetry = options.use_symmetry ? symmetry_reduction(n, v) : kNoSymmetry;
  const auto jobs = partition(n, v, options.jobs, moduli, mode, symmetry);
  const auto results = run_jobs(jobs, options.threads, options.accumulation);
  return finalize(merge(results), n, v, mode);
}

}  // namespace skolem
