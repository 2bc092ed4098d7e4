#include "skolem/job_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "skolem/error.hpp"

namespace skolem {

namespace {

constexpr std::string_view kJobMagic = "skolem-job";
constexpr std::string_view kResultMagic = "skolem-result";
constexpr int kFormatVersion = 1;

using Fields = std::map<std::string, std::string, std::less<>>;

Fields split_lines(std::string_view text, std::string_view magic, Manifest* manifest) {
  Fields fields;
  std::istringstream in{std::string(text)};
  std::string line;
  bool saw_magic = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto space = line.find(' ');
    std::string key = line.substr(0, space);
    std::string value = space == std::string::npos ? "" : line.substr(space + 1);
    if (!saw_magic) {
      if (key != magic) throw MalformedInput("expected '" + std::string(magic) + "' header, got '" + key + "'");
      if (value != std::to_string(kFormatVersion)) throw MalformedInput("unsupported format version " + value);
      saw_magic = true;
      continue;
    }
    if (key.starts_with("manifest.")) {
      if (manifest) (*manifest)[key.substr(9)] = value;
      continue;
    }
    if (!fields.emplace(key, value).second) throw MalformedInput("duplicate key '" + key + "'");
  }
  if (!saw_magic) throw MalformedInput("empty " + std::string(magic) + " file");
  return fields;
}

const std::string& require(const Fields& fields, std::string_view key) {
  auto it = fields.find(key);
  if (it == fields.end()) throw MalformedInput("missing key '" + std::string(key) + "'");
  return it->second;
}

template <typename T>
T to_number(std::string_view text, std::string_view key, int base = 10) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw MalformedInput("bad value '" + std::string(text) + "' for key '" + std::string(key) + "'");
  }
  return value;
}

template <typename T>
std::vector<T> to_numbers(std::string_view text, std::string_view key) {
  std::vector<T> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(to_number<T>(token, key));
  return out;
}

JobSpec job_from_fields(const Fields& f) {
  JobSpec job;
  job.variant = parse_variant(require(f, "variant"));
  job.n = to_number<int>(require(f, "n"), "n");
  job.mode = parse_mode(require(f, "mode"));
  job.fixed_bits = to_number<int>(require(f, "fixed_bits"), "fixed_bits");
  job.multiplier = to_number<int>(require(f, "multiplier"), "multiplier");
  job.prefix_bits = to_number<int>(require(f, "prefix_bits"), "prefix_bits");
  job.prefix_value = to_number<std::uint64_t>(require(f, "prefix_value"), "prefix_value");
  job.moduli = ModulusSet(job.n, to_numbers<std::uint32_t>(require(f, "moduli"), "moduli"));
  job.validate();
  return job;
}

void write_job_fields(std::ostream& out, const JobSpec& job) {
  out << "variant " << to_string(job.variant) << '\n'
      << "n " << job.n << '\n'
      << "mode " << to_string(job.mode) << '\n'
      << "fixed_bits " << job.fixed_bits << '\n'
      << "multiplier " << job.multiplier << '\n'
      << "prefix_bits " << job.prefix_bits << '\n'
      << "prefix_value " << job.prefix_value << '\n'
      << "moduli";
  for (auto m : job.moduli.moduli()) out << ' ' << m;
  out << '\n';
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
  for (const auto& [key, value] : manifest) out << "manifest." << key << ' ' << value << '\n';
}

}  // namespace

std::string format_job(const JobSpec& job, const Manifest& manifest) {
  std::ostringstream out;
  out << kJobMagic << ' ' << kFormatVersion << '\n';
  write_job_fields(out, job);
  write_manifest(out, manifest);
  return out.str();
}

JobSpec parse_job(std::string_view text) { return job_from_fields(split_lines(text, kJobMagic, nullptr)); }

std::string format_result(const JobResult& result, const Manifest& manifest) {
  std::ostringstream out;
  out << kResultMagic << ' ' << kFormatVersion << '\n';
  write_job_fields(out, result.spec);
  out << "residues";
  for (auto r : result.residues) out << ' ' << r;
  out << '\n' << "steps " << result.steps << '\n';
  out << "checksum " << std::hex << std::setw(16) << std::setfill('0') << result.checksum << std::dec << '\n';
  write_manifest(out, manifest);
  return out.str();
}

JobResult parse_result(std::string_view text, Manifest* manifest) {
  const Fields f = split_lines(text, kResultMagic, manifest);
  JobResult result;
  result.spec = job_from_fields(f);
  result.residues = to_numbers<std::uint64_t>(require(f, "residues"), "residues");
  if (result.residues.size() != result.spec.moduli.size()) throw MalformedInput("residue count differs from moduli");
  for (std::size_t i = 0; i < result.residues.size(); ++i) {
    if (result.residues[i] >= result.spec.moduli.modulus(i)) throw MalformedInput("residue not reduced");
  }
  result.steps = to_number<std::uint64_t>(require(f, "steps"), "steps");
  result.checksum = to_number<std::uint64_t>(require(f, "checksum"), "checksum", 16);
  return result;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace skolem
