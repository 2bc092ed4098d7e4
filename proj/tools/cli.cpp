#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "skolem/approx.hpp"
#include "skolem/backtrack.hpp"
#include "skolem/construct.hpp"
#include "skolem/error.hpp"
#include "skolem/job_io.hpp"
#include "skolem/jobs.hpp"

namespace skolem::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = SKOLEM_VERSION;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("SKOLEM_SEED");
  if (!env || !*env) return 1;
  try {
    std::size_t used = 0;
    const auto seed = std::stoull(env, &used);
    if (used != std::string_view(env).size()) throw std::invalid_argument(env);
    return seed;
  } catch (const std::exception&) {
    throw UsageError(std::string("SKOLEM_SEED must be an unsigned integer, got '") + env + "'");
  }
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

Json moduli_json(const ModulusSet& set) {
  Json out = Json::array();
  for (auto m : set.moduli()) out.push_back(m);
  return out;
}

void write_record(const std::string& path, const Json& record) {
  if (!path.empty()) write_text_file(path, record.dump(2) + "\n");
}

struct Problem {
  std::string variant;
  int n = 0;
  std::string mode = "all";

  void add_to(CLI::App& cmd, bool with_mode = true) {
    cmd.add_option("--variant", variant, "skolem or langford")->required()->check(CLI::IsMember({"skolem", "langford"}, CLI::ignore_case));
    cmd.add_option("--n", n, "order")->required()->check(CLI::PositiveNumber);
    if (with_mode) cmd.add_option("--mode", mode, "all or reflect")->capture_default_str()->check(CLI::IsMember({"all", "reflect"}));
  }
  Variant v() const { return parse_variant(variant); }
  CountMode m() const { return parse_mode(mode); }
};

struct CountArgs {
  Problem problem;
  std::string method = "backtrack";
  unsigned threads = default_threads();
  int jobs = 1;
  std::string emit;
  std::uint64_t iterations = 1u << 20;
  std::int64_t burn_in = -1;
  std::uint64_t seed = 0;
  std::string ladder = "auto";
  double target_swap = 0.5;
  int runs = 1;
  std::string record;
};

Ladder resolve_ladder(const CountArgs& a, std::ostream& out) {
  if (a.ladder == "auto") {
    LadderOptions lo;
    lo.target_swap = a.target_swap;
    Ladder l = build_ladder(a.problem.v(), a.problem.n, lo, a.seed);
    out << "ladder (auto, " << l.size() << " levels): " << l.format() << '\n';
    return l;
  }
  if (a.ladder.rfind("preset:", 0) == 0) return Ladder::preset(a.ladder.substr(7));
  return Ladder::parse(read_text_file(a.ladder));
}

int cmd_count(const CountArgs& a, std::ostream& out) {
  const Variant v = a.problem.v();
  const CountMode mode = a.problem.m();
  const int n = a.problem.n;
  Json record{{"command", "count"},
              {"method", a.method},
              {"variant", std::string(to_string(v))},
              {"n", n},
              {"mode", std::string(to_string(mode))}};

  if (a.method == "backtrack") {
    std::uint64_t count = 0;
    if (!a.emit.empty()) {
      std::ofstream file(a.emit, std::ios::binary);
      if (!file) throw Error("cannot open '" + a.emit + "' for writing");
      count = enumerate(v, n, [&](const LabelSequence& s) { file << format_labels(s) << '\n'; });
      if (mode == CountMode::UpToReflection && n > 1) count /= 2;
    } else {
      count = count_exact(v, n, mode, a.threads);
    }
    out << count << '\n';
    record["count"] = std::to_string(count);
  } else if (a.method == "algebraic") {
    AlgebraicOptions o;
    o.jobs = a.jobs;
    o.threads = a.threads;
    const BigInt count = count_algebraic(v, n, mode, o);
    out << count << '\n';
    record["jobs"] = a.jobs;
    record["moduli"] = moduli_json(ModulusSet::defaults(n));
    record["count"] = count.str();
  } else {
    const Ladder ladder = resolve_ladder(a, out);
    EstimateOptions o;
    o.iterations = a.iterations;
    o.burn_in = a.burn_in;
    o.seed = a.seed;
    o.mode = mode;
    const auto reports = run_repeated(v, n, ladder, o, a.runs, a.threads);
    for (const auto& r : reports) out << format_report(r);
    const auto summary = repeat_and_average(reports);
    if (reports.size() > 1) {
      out << "mean " << std::setprecision(10) << summary.mean << " +- " << std::setprecision(4) << summary.stddev
          << " (median " << std::setprecision(10) << summary.median << ", " << reports.size() << " runs)\n";
    }
    record["seed"] = a.seed;
    record["iterations"] = a.iterations;
    record["burn_in"] = reports.front().burn_in;
    record["ladder"] = std::vector<double>(ladder.betas().begin(), ladder.betas().end());
    record["runs"] = a.runs;
    record["estimates"] = summary.estimates;
    record["mean"] = summary.mean;
    record["stddev"] = summary.stddev;
    record["median"] = summary.median;
  }
  record["version"] = kVersion;
  write_record(a.record, record);
  return kSuccess;
}

int cmd_construct(const Problem& p, const std::string& format, std::ostream& out) {
  const Variant v = p.v();
  PairList pairs;
  LabelSequence labels;
  if (v == Variant::Skolem) {
    pairs = construct_skolem(p.n);
    labels = sequence_from_pairs(pairs);
  } else {
    labels = construct_langford(p.n);
    pairs = pairs_from_sequence(labels);
  }
  out << (format == "pairs" ? format_pairs(pairs) : format_labels(labels)) << '\n';
  return kSuccess;
}

int cmd_verify(const std::string& variant, const std::string& text, std::ostream& out) {
  const Variant v = parse_variant(variant);
  const auto first = text.find_first_not_of(" \t");
  const bool pairs = first != std::string::npos && text[first] == '(';
  const bool ok = pairs ? verify(parse_pairs(text), v) : verify(parse_labels(text), v);
  out << (ok ? "valid" : "invalid") << '\n';
  return ok ? kSuccess : kVerificationFalse;
}

struct SplitArgs {
  Problem problem;
  int jobs = 1;
  std::string out_dir;
  bool no_symmetry = false;
};

int cmd_split(const SplitArgs& a, std::ostream& out) {
  const Variant v = a.problem.v();
  const int n = a.problem.n;
  const auto symmetry = a.no_symmetry ? kNoSymmetry : symmetry_reduction(n, v);
  const auto jobs = partition(n, v, a.jobs, ModulusSet::defaults(n), a.problem.m(), symmetry);
  fs::create_directories(a.out_dir);
  const Manifest manifest{{"command", "jobs split"}, {"version", kVersion}};
  for (const auto& job : jobs) write_text_file(fs::path(a.out_dir) / (job.id() + ".job"), format_job(job, manifest));
  out << "wrote " << jobs.size() << " job files to " << a.out_dir << '\n';
  return kSuccess;
}

struct RunArgs {
  std::vector<std::string> files;
  std::string out_dir;
  bool twice = false;
  int replica = 0;
  unsigned threads = default_threads();
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<JobSpec> specs;
  for (const auto& f : a.files) specs.push_back(parse_job(read_text_file(f)));
  const auto results = run_jobs(specs, a.threads);
  if (a.twice) {
    const auto again = run_jobs(specs, a.threads);
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!(results[i] == again[i])) {
        err << "error: job " << specs[i].id() << " gave different results on two runs; run it a third time\n";
        return kComputationError;
      }
    }
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    const fs::path source(a.files[i]);
    const fs::path dir = a.out_dir.empty() ? source.parent_path() : fs::path(a.out_dir);
    if (!dir.empty()) fs::create_directories(dir);
    Manifest manifest{{"command", "jobs run"}, {"job_file", source.filename().string()}, {"version", kVersion}};
    std::string name = specs[i].id();
    if (a.replica > 0) {
      manifest["replica"] = std::to_string(a.replica);
      name += ".r" + std::to_string(a.replica);
    }
    const fs::path target = dir / (name + ".result");
    write_text_file(target, format_result(results[i], manifest));
    out << specs[i].id() << ": " << results[i].steps << " evaluations -> " << target.string() << '\n';
  }
  return kSuccess;
}

int cmd_merge(const std::string& dir, const std::string& record_path, std::ostream& out) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".result") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<JobResult> results;
  for (const auto& f : files) results.push_back(parse_result(read_text_file(f)));
  const ResidueSet rs = merge(results);
  const JobSpec& spec = results.front().spec;
  const BigInt count = finalize(rs, spec.n, spec.variant, spec.mode);
  out << count << '\n';
  Json record{{"command", "jobs merge"},
              {"variant", std::string(to_string(spec.variant))},
              {"n", spec.n},
              {"mode", std::string(to_string(spec.mode))},
              {"moduli", moduli_json(spec.moduli)},
              {"result_files", results.size()},
              {"count", count.str()},
              {"version", kVersion}};
  write_record(record_path, record);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Count, construct and verify Skolem and Langford sequences", "skolem"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "count sequences exactly or approximately");
  count.problem.add_to(*count_cmd);
  count_cmd->add_option("--method", count.method, "backtrack, algebraic or approx")->capture_default_str()
      ->check(CLI::IsMember({"backtrack", "algebraic", "approx"}));
  count_cmd->add_option("--threads", count.threads, "worker threads")->check(CLI::PositiveNumber);
  count_cmd->add_option("--jobs", count.jobs, "algebraic: split into this many jobs (power of two)");
  count_cmd->add_option("--emit-solutions", count.emit, "backtrack: write every sequence to FILE");
  count_cmd->add_option("--iterations", count.iterations, "approx: sweeps per run");
  count_cmd->add_option("--burn-in", count.burn_in, "approx: discarded sweeps (default iterations/16)");
  count_cmd->add_option("--seed", count.seed, "approx: random seed (default $SKOLEM_SEED or 1)");
  count_cmd->add_option("--ladder", count.ladder, "approx: auto, preset:NAME or a file of betas")->capture_default_str();
  count_cmd->add_option("--target-swap", count.target_swap, "approx: swap rate the auto ladder aims for")->capture_default_str();
  count_cmd->add_option("--runs", count.runs, "approx: independent runs with seeds seed, seed+1, ...")
      ->check(CLI::PositiveNumber);
  count_cmd->add_option("--record", count.record, "write a JSON record of the run to FILE");

  Problem construct;
  std::string construct_format = "labels";
  auto* construct_cmd = app.add_subcommand("construct", "print one sequence of order n");
  construct.add_to(*construct_cmd, false);
  construct_cmd->add_option("--format", construct_format, "labels or pairs")->capture_default_str()
      ->check(CLI::IsMember({"labels", "pairs"}));

  std::string verify_variant, verify_text;
  auto* verify_cmd = app.add_subcommand("verify", "check a sequence (exit 1 if invalid)");
  verify_cmd->add_option("--variant", verify_variant)->required()->check(CLI::IsMember({"skolem", "langford"}, CLI::ignore_case));
  verify_cmd->add_option("sequence", verify_text, "\"4,2,3,2,4,3,1,1\" or \"(7,8) (3,5) ...\"")->required();

  Problem exists;
  auto* exists_cmd = app.add_subcommand("exists", "print yes if a sequence of order n exists");
  exists.add_to(*exists_cmd, false);

  auto* jobs_cmd = app.add_subcommand("jobs", "split, run and merge algebraic jobs");
  jobs_cmd->require_subcommand(1);
  SplitArgs split;
  auto* split_cmd = jobs_cmd->add_subcommand("split", "write job files");
  split.problem.add_to(*split_cmd);
  split_cmd->add_option("--jobs", split.jobs, "number of jobs (power of two)")->required();
  split_cmd->add_option("--out", split.out_dir, "output directory")->required();
  split_cmd->add_flag("--no-symmetry", split.no_symmetry, "walk the whole cube");
  RunArgs run_args;
  auto* run_cmd = jobs_cmd->add_subcommand("run", "run job files and write result files");
  run_cmd->add_option("files", run_args.files, "job files")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run_args.out_dir, "result directory (default: next to each job)");
  run_cmd->add_flag("--twice", run_args.twice, "run every job twice and compare");
  run_cmd->add_option("--replica", run_args.replica, "tag results as duplicate run K")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--threads", run_args.threads, "worker threads")->check(CLI::PositiveNumber);
  std::string merge_dir, merge_record;
  auto* merge_cmd = jobs_cmd->add_subcommand("merge", "combine result files and print the count");
  merge_cmd->add_option("dir", merge_dir, "directory of .result files")->required()->check(CLI::ExistingDirectory);
  merge_cmd->add_option("--record", merge_record, "write a JSON record to FILE");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (e.get_name() == "CallForVersion" ? std::string(kVersion) + "\n" : app.help());
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*count_cmd) {
      if (count_cmd->count("--seed") == 0) count.seed = default_seed();
      return cmd_count(count, out);
    }
    if (*construct_cmd) return cmd_construct(construct, construct_format, out);
    if (*verify_cmd) return cmd_verify(verify_variant, verify_text, out);
    if (*exists_cmd) {
      out << (existence(exists.v(), exists.n) ? "yes" : "no") << '\n';
      return kSuccess;
    }
    if (*split_cmd) return cmd_split(split, out);
    if (*run_cmd) return cmd_run(run_args, out, err);
    if (*merge_cmd) return cmd_merge(merge_dir, merge_record, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ExistenceError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputationError;
  }
  return kUsageError;
}

}  // namespace skolem::cli
