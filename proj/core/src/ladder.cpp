#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "skolem/approx.hpp"
#include "skolem/error.hpp"

namespace skolem {

namespace {

struct Pilot {
  double beta;
  std::vector<double> distribution;  // empirical P(E = e)
  Configuration last;
};

Pilot run_pilot(double beta, Configuration start, std::uint64_t iterations, Rng& rng) {
  const AcceptanceTable table(beta);
  for (std::uint64_t i = 0; i < iterations / 4; ++i) metropolis_step(start, table, rng);
  std::vector<double> dist(static_cast<std::size_t>(start.bins() + 1), 0.0);
  for (std::uint64_t i = 0; i < iterations; ++i) {
    metropolis_step(start, table, rng);
    dist[static_cast<std::size_t>(start.energy())] += 1.0;
  }
  for (double& p : dist) p /= static_cast<double>(iterations);
  return {beta, std::move(dist), std::move(start)};
}

double expected_swap(const Pilot& lower, const Pilot& upper) {
  double total = 0;
  for (std::size_t a = 0; a < lower.distribution.size(); ++a) {
    if (lower.distribution[a] == 0) continue;
    for (std::size_t b = 0; b < upper.distribution.size(); ++b) {
      if (upper.distribution[b] == 0) continue;
      total += lower.distribution[a] * upper.distribution[b] *
               swap_probability(lower.beta, upper.beta, static_cast<int>(a), static_cast<int>(b));
    }
  }
  return total;
}

}  // namespace

Ladder::Ladder(std::vector<double> betas) : betas_(std::move(betas)) {
  if (betas_.empty()) throw LadderError("ladder needs at least one level");
  if (betas_.front() != 0.0) throw LadderError("ladder must start at beta = 0");
  for (std::size_t i = 1; i < betas_.size(); ++i) {
    if (!(betas_[i] > betas_[i - 1]) || !std::isfinite(betas_[i])) {
      throw LadderError("ladder betas must be finite and strictly increasing");
    }
  }
}

Ladder Ladder::preset(std::string_view name) {
  if (name == "n12") return Ladder({0, 0.54, 1.1, 1.69, 2.33, 3, 3.73, 4.65, 5.82, 8.1, 16, 32});
  throw LadderError("unknown ladder preset '" + std::string(name) + "'");
}

Ladder Ladder::parse(std::string_view text) {
  std::string cleaned(text);
  std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
  std::istringstream in(cleaned);
  std::vector<double> betas;
  std::string token;
  while (in >> token) {
    if (token.front() == '#') {
      std::getline(in, token);
      continue;
    }
    try {
      std::size_t used = 0;
      betas.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw LadderError("bad beta '" + token + "'");
    }
  }
  return Ladder(std::move(betas));
}

std::string Ladder::format() const {
  std::ostringstream out;
  out.precision(6);
  for (std::size_t i = 0; i < betas_.size(); ++i) out << (i ? " " : "") << betas_[i];
  return out.str();
}

Ladder build_ladder(Variant v, int n, const LadderOptions& options, std::uint64_t seed) {
  if (!(options.target_swap > 0 && options.target_swap < 1)) throw LadderError("target swap rate must be in (0,1)");
  if (options.max_levels < 2 || !(options.beta_max > 0) || !(options.initial_step > 0)) {
    throw LadderError("ladder needs max_levels >= 2, beta_max > 0 and a positive initial step");
  }
  Rng rng = make_stream(seed, 0x1add3);
  std::vector<double> betas{0.0};
  Pilot previous = run_pilot(0.0, Configuration::random(v, n, rng), options.pilot_iterations, rng);
  double step = options.initial_step;

  auto diagnostics = [&](std::string_view why) {
    std::ostringstream msg;
    msg << why << " (n=" << n << ", target " << options.target_swap << ", max_levels " << options.max_levels
        << "); partial ladder:";
    for (double b : betas) msg << ' ' << b;
    return msg.str();
  };

  while (betas.back() < options.beta_max) {
    if (static_cast<int>(betas.size()) >= options.max_levels) {
      throw LadderError(diagnostics("cannot reach beta_max within max_levels"));
    }
    const double last = betas.back();
    const double room = options.beta_max - last;
    auto probe = [&](double delta) { return run_pilot(last + delta, previous.last, options.pilot_iterations, rng); };

    // good: largest tested increment meeting the target; bad: smallest failing.
    double good = 0, bad = 0;
    std::optional<Pilot> good_pilot;
    double delta = std::min(step, room);
    Pilot trial = probe(delta);
    if (expected_swap(previous, trial) >= options.target_swap) {
      good = delta;
      good_pilot = std::move(trial);
      while (good < room) {
        const double next = std::min(2 * good, room);
        Pilot p = probe(next);
        if (expected_swap(previous, p) < options.target_swap) {
          bad = next;
          break;
        }
        good = next;
        good_pilot = std::move(p);
      }
    } else {
      bad = delta;
      for (int halvings = 0; !good_pilot; ++halvings) {
        if (halvings > 30) throw LadderError(diagnostics("swap acceptance stays below target for tiny increments"));
        const double next = bad / 2;
        Pilot p = probe(next);
        if (expected_swap(previous, p) >= options.target_swap) {
          good = next;
          good_pilot = std::move(p);
        } else {
          bad = next;
        }
      }
    }
    if (bad > 0) {
      for (int i = 0; i < options.bisection_steps; ++i) {
        const double mid = (good + bad) / 2;
        Pilot p = probe(mid);
        if (expected_swap(previous, p) >= options.target_swap) {
          good = mid;
          good_pilot = std::move(p);
        } else {
          bad = mid;
        }
      }
    }
    betas.push_back(good >= room ? options.beta_max : last + good);
    previous = std::move(*good_pilot);
    previous.beta = betas.back();
    step = good;
  }
  return Ladder(std::move(betas));
}

}  // namespace skolem
