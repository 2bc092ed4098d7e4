#include "skolem/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>
#include <sstream>

#include "skolem/error.hpp"

namespace skolem {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

int parse_int(std::string_view token) {
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw MalformedInput("not an integer: '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  return v == Variant::Skolem ? "skolem" : "langford";
}

std::string_view to_string(CountMode m) noexcept {
  return m == CountMode::AllSequences ? "all" : "reflect";
}

Variant parse_variant(std::string_view text) {
  const auto t = lower(text);
  if (t == "skolem") return Variant::Skolem;
  if (t == "langford") return Variant::Langford;
  throw MalformedInput("unknown variant '" + std::string(text) + "' (expected skolem|langford)");
}

CountMode parse_mode(std::string_view text) {
  const auto t = lower(text);
  if (t == "all") return CountMode::AllSequences;
  if (t == "reflect") return CountMode::UpToReflection;
  throw MalformedInput("unknown mode '" + std::string(text) + "' (expected all|reflect)");
}

bool existence(Variant v, int n) {
  if (n < 1) throw MalformedInput("order n must be positive");
  const int m = n % 4;
  return v == Variant::Skolem ? (m == 0 || m == 1) : (m == 0 || m == 3);
}

PairList::PairList(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
  for (const auto& p : pairs_) {
    if (p.first < 1 || p.second <= p.first) {
      throw MalformedInput("pair (" + std::to_string(p.first) + "," + std::to_string(p.second) +
                           ") must satisfy 1 <= a < b");
    }
  }
}

LabelSequence::LabelSequence(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty() || labels_.size() % 2 != 0) {
    throw MalformedInput("label sequence must have even, nonzero length");
  }
  const int n = static_cast<int>(labels_.size() / 2);
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int label : labels_) {
    if (label < 1 || label > n) {
      throw MalformedInput("label " + std::to_string(label) + " outside 1.." + std::to_string(n));
    }
    ++seen[static_cast<std::size_t>(label)];
  }
  for (int r = 1; r <= n; ++r) {
    if (seen[static_cast<std::size_t>(r)] != 2) {
      throw MalformedInput("label " + std::to_string(r) + " appears " +
                           std::to_string(seen[static_cast<std::size_t>(r)]) + " times");
    }
  }
}

bool verify(const LabelSequence& seq, Variant v) {
  const PairList pairs = pairs_from_sequence(seq);
  for (int r = 1; r <= pairs.n(); ++r) {
    const auto& p = pairs.at(r);
    if (p.second - p.first != separation(v, r)) return false;
  }
  return true;
}

bool verify(const PairList& pairs, Variant v) {
  const int n = pairs.n();
  if (n == 0) return false;
  std::vector<bool> used(static_cast<std::size_t>(2 * n) + 1, false);
  for (int r = 1; r <= n; ++r) {
    const auto& p = pairs.at(r);
    if (p.second - p.first != separation(v, r)) return false;
    for (int pos : {p.first, p.second}) {
      if (pos > 2 * n || used[static_cast<std::size_t>(pos)]) return false;
      used[static_cast<std::size_t>(pos)] = true;
    }
  }
  return true;
}

PairList pairs_from_sequence(const LabelSequence& seq) {
  const int n = seq.n();
  std::vector<Pair> pairs(static_cast<std::size_t>(n));
  for (int pos = 1; pos <= 2 * n; ++pos) {
    auto& p = pairs[static_cast<std::size_t>(seq.at(pos) - 1)];
    (p.first == 0 ? p.first : p.second) = pos;
  }
  return PairList(std::move(pairs));
}

LabelSequence sequence_from_pairs(const PairList& pairs) {
  const int n = pairs.n();
  if (n == 0) throw MalformedInput("empty pair list");
  std::vector<int> labels(static_cast<std::size_t>(2 * n), 0);
  for (int r = 1; r <= n; ++r) {
    const auto& p = pairs.at(r);
    for (int pos : {p.first, p.second}) {
      if (pos > 2 * n) {
        throw MalformedInput("position " + std::to_string(pos) + " outside 1.." + std::to_string(2 * n));
      }
      auto& slot = labels[static_cast<std::size_t>(pos - 1)];
      if (slot != 0) throw MalformedInput("position " + std::to_string(pos) + " used twice");
      slot = r;
    }
  }
  return LabelSequence(std::move(labels));
}

LabelSequence reflect(const LabelSequence& seq) {
  std::vector<int> labels(seq.labels().rbegin(), seq.labels().rend());
  return LabelSequence(std::move(labels));
}

std::string format_labels(const LabelSequence& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(seq.labels()[i]);
  }
  return out;
}

LabelSequence parse_labels(std::string_view text) {
  std::vector<int> labels;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    labels.push_back(parse_int(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return LabelSequence(std::move(labels));
}

std::string format_pairs(const PairList& pairs) {
  std::ostringstream out;
  for (int r = 1; r <= pairs.n(); ++r) {
    if (r > 1) out << ' ';
    out << '(' << pairs.at(r).first << ',' << pairs.at(r).second << ')';
  }
  return out.str();
}

PairList parse_pairs(std::string_view text) {
  static const std::regex pair_re(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  static const std::regex separators_re(R"([\s,]*)");
  std::vector<Pair> pairs;
  const std::string s(text);
  auto it = std::sregex_iterator(s.begin(), s.end(), pair_re);
  std::size_t consumed = 0;
  for (; it != std::sregex_iterator(); ++it) {
    const auto gap = s.substr(consumed, static_cast<std::size_t>(it->position()) - consumed);
    if (!std::regex_match(gap, separators_re)) throw MalformedInput("unexpected text '" + gap + "' in pair list");
    pairs.push_back({parse_int((*it)[1].str()), parse_int((*it)[2].str())});
    consumed = static_cast<std::size_t>(it->position() + it->length());
  }
  if (!std::regex_match(s.substr(consumed), separators_re) || pairs.empty()) {
    throw MalformedInput("cannot parse pair list '" + s + "'");
  }
  return PairList(std::move(pairs));
}

}  // namespace skolem
