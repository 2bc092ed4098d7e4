#include "skolem/approx.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "skolem/error.hpp"

namespace skolem {

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

BigInt simplified_count(Variant v, int n) {
  if (n < 1) throw MalformedInput("order n must be positive");
  BigInt product = 1;
  for (int k = 1; k <= n; ++k) product *= std::max(0, 2 * n - separation(v, k));
  return product;
}

Configuration::Configuration(Variant v, int n, std::vector<int> offsets)
    : variant_(v), n_(n), offsets_(std::move(offsets)), occupancy_(static_cast<std::size_t>(2 * n), 0) {
  if (n < 1) throw MalformedInput("order n must be positive");
  if (static_cast<int>(offsets_.size()) != n) throw MalformedInput("need exactly n offsets");
  for (int k = 1; k <= n; ++k) {
    const int o = offsets_[static_cast<std::size_t>(k - 1)];
    if (o < 1 || o > max_offset(k)) {
      throw MalformedInput("offset " + std::to_string(o) + " of label " + std::to_string(k) + " outside 1.." +
                           std::to_string(max_offset(k)));
    }
    ++occupancy_[static_cast<std::size_t>(o - 1)];
    ++occupancy_[static_cast<std::size_t>(o - 1 + separation(v, k))];
  }
  energy_ = recount_energy();
}

Configuration Configuration::random(Variant v, int n, Rng& rng) {
  std::vector<int> offsets(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const int hi = 2 * n - separation(v, k);
    if (hi < 1) throw MalformedInput("label " + std::to_string(k) + " does not fit in " + std::to_string(2 * n) + " bins");
    offsets[static_cast<std::size_t>(k - 1)] = std::uniform_int_distribution<int>(1, hi)(rng);
  }
  return Configuration(v, n, std::move(offsets));
}

int Configuration::delta_energy(const Move& move) const noexcept {
  const int d = separation(variant_, move.difference);
  const int old_a = offsets_[static_cast<std::size_t>(move.difference - 1)];
  const int new_a = move.offset;
  if (old_a == new_a) return 0;
  const int old_b = old_a + d;
  const int new_b = new_a + d;
  auto change = [&](int bin) {
    const int before = occupancy_[static_cast<std::size_t>(bin - 1)];
    const int after = before - (bin == old_a) - (bin == old_b) + (bin == new_a) + (bin == new_b);
    return static_cast<int>(after == 0) - static_cast<int>(before == 0);
  };
  int delta = change(old_a) + change(old_b);
  if (new_a != old_b) delta += change(new_a);
  if (new_b != old_a) delta += change(new_b);
  return delta;
}

void Configuration::apply(const Move& move, int delta) noexcept {
  const int d = separation(variant_, move.difference);
  int& a = offsets_[static_cast<std::size_t>(move.difference - 1)];
  --occupancy_[static_cast<std::size_t>(a - 1)];
  --occupancy_[static_cast<std::size_t>(a - 1 + d)];
  a = move.offset;
  ++occupancy_[static_cast<std::size_t>(a - 1)];
  ++occupancy_[static_cast<std::size_t>(a - 1 + d)];
  energy_ += delta;
}

int Configuration::recount_energy() const {
  std::vector<int> occ(static_cast<std::size_t>(2 * n_), 0);
  for (int k = 1; k <= n_; ++k) {
    const int o = offsets_[static_cast<std::size_t>(k - 1)];
    ++occ[static_cast<std::size_t>(o - 1)];
    ++occ[static_cast<std::size_t>(o - 1 + separation(variant_, k))];
  }
  return static_cast<int>(std::count(occ.begin(), occ.end(), 0));
}

LabelSequence Configuration::to_sequence() const {
  std::vector<int> labels(static_cast<std::size_t>(2 * n_), 0);
  for (int k = 1; k <= n_; ++k) {
    const int o = offsets_[static_cast<std::size_t>(k - 1)];
    labels[static_cast<std::size_t>(o - 1)] = k;
    labels[static_cast<std::size_t>(o - 1 + separation(variant_, k))] = k;
  }
  return LabelSequence(std::move(labels));
}

Move propose(const Configuration& c, Rng& rng) {
  const int k = std::uniform_int_distribution<int>(1, c.n())(rng);
  const int o = std::uniform_int_distribution<int>(1, c.max_offset(k))(rng);
  return {k, o};
}

AcceptanceTable::AcceptanceTable(double beta) : beta_(beta) {
  if (!(beta >= 0)) throw MalformedInput("inverse temperature must be nonnegative");
  uphill_ = {1.0, std::exp(-beta), std::exp(-2 * beta)};
}

bool metropolis_step(Configuration& c, const AcceptanceTable& table, Rng& rng) {
  const Move move = propose(c, rng);
  const int delta = c.delta_energy(move);
  if (delta > 0 && !(std::uniform_real_distribution<double>(0.0, 1.0)(rng) < table.probability(delta))) {
    return false;
  }
  c.apply(move, delta);
  return true;
}

bool metropolis_step(Configuration& c, double beta, Rng& rng) {
  return metropolis_step(c, AcceptanceTable(beta), rng);
}

double swap_probability(double beta_lower, double beta_upper, int e_lower, int e_upper) noexcept {
  const double exponent = -(beta_upper - beta_lower) * static_cast<double>(e_lower - e_upper);
  return exponent >= 0 ? 1.0 : std::exp(exponent);
}

int replica_swap(std::span<Replica> levels, Rng& rng) {
  int swaps = 0;
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    Replica& lo = levels[j];
    Replica& hi = levels[j + 1];
    const double p = swap_probability(lo.beta, hi.beta, lo.config.energy(), hi.config.energy());
    ++lo.swap_attempts;
    if (p >= 1.0 || std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p) {
      std::swap(lo.config, hi.config);
      ++lo.swaps;
      ++swaps;
    }
  }
  return swaps;
}

EstimateReport estimate(Variant v, int n, const Ladder& ladder, const EstimateOptions& options) {
  if (ladder.size() == 0) throw LadderError("empty ladder");
  if (options.iterations == 0) throw MalformedInput("iterations must be positive");
  if (options.batches < 2) throw MalformedInput("need at least two batches");

  EstimateReport report;
  report.variant = v;
  report.n = n;
  report.mode = options.mode;
  report.iterations = options.iterations;
  report.burn_in = options.burn_in < 0 ? options.iterations / 16 : static_cast<std::uint64_t>(options.burn_in);
  report.seed = options.seed;

  const BigInt relaxed = simplified_count(v, n);
  if (relaxed == 0) {
    report.warnings.push_back("no relaxed placements exist; estimate is 0");
    return report;
  }

  const std::size_t levels_count = ladder.size();
  std::vector<Replica> levels;
  levels.reserve(levels_count);
  for (std::size_t j = 0; j < levels_count; ++j) {
    Rng rng = make_stream(options.seed, j);
    Configuration start = Configuration::random(v, n, rng);
    levels.emplace_back(ladder[j], std::move(start), std::move(rng));
  }
  Rng swap_rng = make_stream(options.seed, levels_count);

  const std::size_t energies = static_cast<std::size_t>(2 * n + 1);
  const std::size_t batches = static_cast<std::size_t>(options.batches);
  // hist[(j * batches + b) * energies + e]
  std::vector<std::uint64_t> hist(levels_count * batches * energies, 0);

  const std::uint64_t total = report.burn_in + options.iterations;
  for (std::uint64_t it = 0; it < total; ++it) {
    if (it == report.burn_in) {
      for (auto& r : levels) r.proposed = r.accepted = r.swap_attempts = r.swaps = 0;
    }
    for (auto& r : levels) {
      ++r.proposed;
      r.accepted += metropolis_step(r.config, r.table, r.rng);
    }
    replica_swap(levels, swap_rng);

    if (it >= report.burn_in) {
      const std::size_t b = static_cast<std::size_t>((it - report.burn_in) * batches / options.iterations);
      for (std::size_t j = 0; j < levels_count; ++j) {
        ++hist[(j * batches + b) * energies + static_cast<std::size_t>(levels[j].config.energy())];
      }
    }
    if (options.energy_check_every && (it + 1) % options.energy_check_every == 0) {
      for (const auto& r : levels) {
        if (r.config.energy() != r.config.recount_energy()) {
          throw MismatchError("cached energy drifted at sweep " + std::to_string(it + 1));
        }
      }
    }
  }

  double log_estimate = std::log(relaxed.convert_to<double>());
  double rel_var = 0;
  for (std::size_t j = 0; j < levels_count; ++j) {
    const Replica& r = levels[j];
    const bool top = j + 1 == levels_count;
    const double gap = top ? 0.0 : ladder[j + 1] - ladder[j];
    auto weight = [&](std::size_t e) {
      if (top) return e == 0 ? 1.0 : 0.0;
      return std::exp(-gap * static_cast<double>(e));
    };

    LevelReport lr;
    lr.beta = ladder[j];
    lr.move_acceptance = static_cast<double>(r.accepted) / static_cast<double>(r.proposed);
    lr.swap_acceptance = top ? std::numeric_limits<double>::quiet_NaN()
                             : static_cast<double>(r.swaps) / static_cast<double>(r.swap_attempts);
    lr.energy_histogram.assign(energies, 0);

    std::vector<double> batch_ratio(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
      std::uint64_t count = 0;
      double sum = 0;
      for (std::size_t e = 0; e < energies; ++e) {
        const std::uint64_t h = hist[(j * batches + b) * energies + e];
        lr.energy_histogram[e] += h;
        count += h;
        sum += static_cast<double>(h) * weight(e);
      }
      batch_ratio[b] = count ? sum / static_cast<double>(count) : 0.0;
    }
    double ratio_sum = 0, energy_sum = 0;
    for (std::size_t e = 0; e < energies; ++e) {
      ratio_sum += static_cast<double>(lr.energy_histogram[e]) * weight(e);
      energy_sum += static_cast<double>(lr.energy_histogram[e]) * static_cast<double>(e);
    }
    const double samples = static_cast<double>(options.iterations);
    lr.ratio = ratio_sum / samples;
    lr.mean_energy = energy_sum / samples;
    double var = 0;
    for (double x : batch_ratio) var += (x - lr.ratio) * (x - lr.ratio);
    lr.ratio_stderr = std::sqrt(var / static_cast<double>(batches - 1) / static_cast<double>(batches));

    if (lr.ratio > 0) {
      log_estimate += std::log(lr.ratio);
      rel_var += (lr.ratio_stderr / lr.ratio) * (lr.ratio_stderr / lr.ratio);
    }
    report.levels.push_back(std::move(lr));
  }

  if (report.levels.back().ratio == 0) {
    report.warnings.push_back("no ground-state samples at the top level; estimate is 0");
    report.estimate = 0;
  } else {
    report.estimate = std::exp(log_estimate);
    if (options.mode == CountMode::UpToReflection && n > 1) report.estimate /= 2;
  }
  report.relative_stderr = std::sqrt(rel_var);
  return report;
}

RepeatSummary repeat_and_average(std::span<const EstimateReport> runs) {
  if (runs.empty()) throw MalformedInput("no runs to average");
  RepeatSummary s;
  for (const auto& r : runs) s.estimates.push_back(r.estimate);
  const double k = static_cast<double>(s.estimates.size());
  s.mean = std::accumulate(s.estimates.begin(), s.estimates.end(), 0.0) / k;
  double var = 0;
  for (double x : s.estimates) var += (x - s.mean) * (x - s.mean);
  s.stddev = s.estimates.size() > 1 ? std::sqrt(var / (k - 1)) : 0.0;
  auto sorted = s.estimates;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
  return s;
}

std::vector<EstimateReport> run_repeated(Variant v, int n, const Ladder& ladder, const EstimateOptions& options,
                                         int runs, unsigned threads) {
  if (runs < 1) throw MalformedInput("need at least one run");
  std::vector<EstimateReport> reports(static_cast<std::size_t>(runs));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < reports.size(); i = next++) {
      EstimateOptions o = options;
      o.seed = options.seed + i;
      reports[i] = estimate(v, n, ladder, o);
    }
  };
  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(runs));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return reports;
}

std::string format_report(const EstimateReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(4) << "i" << std::setw(10) << "beta" << std::setw(10) << "W1" << std::setw(8) << "W2"
      << std::setw(13) << "E[e]" << "ratio\n";
  for (std::size_t j = 0; j < report.levels.size(); ++j) {
    const auto& l = report.levels[j];
    std::ostringstream w2;
    if (std::isnan(l.swap_acceptance)) {
      w2 << '-';
    } else {
      w2 << std::fixed << std::setprecision(2) << l.swap_acceptance;
    }
    std::ostringstream beta, w1, energy, ratio;
    beta << std::setprecision(4) << l.beta;
    w1 << std::setprecision(3) << l.move_acceptance;
    energy << std::setprecision(3) << l.mean_energy;
    ratio << std::setprecision(6) << l.ratio;
    out << std::setw(4) << (j + 1) << std::setw(10) << beta.str() << std::setw(10) << w1.str() << std::setw(8)
        << w2.str() << std::setw(13) << energy.str() << ratio.str() << '\n';
  }
  out << "estimate " << std::setprecision(10) << report.estimate << " (relative stderr " << std::setprecision(3)
      << report.relative_stderr << ", " << to_string(report.mode) << ", iterations " << report.iterations
      << ", burn-in " << report.burn_in << ", seed " << report.seed << ")\n";
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  return out.str();
}

}  // namespace skolem
