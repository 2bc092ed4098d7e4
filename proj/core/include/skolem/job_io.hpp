#pragma once

// Line-oriented job and result files. Each line is `key value...`; lines
// starting with '#' are comments. Keys prefixed `manifest.` describe the run
// that produced the file and are carried through unchanged. Output is fully
// determined by the inputs, so rerunning a job reproduces its file byte for
// byte.
//
//   skolem-job 1                      skolem-result 1
//   variant skolem                    variant skolem
//   n 12                              ... (all job fields) ...
//   mode reflect                      residues 1234 5678 ...
//   fixed_bits 2                      steps 1048576
//   multiplier 4                      checksum 00000000000a2f40
//   prefix_bits 2
//   prefix_value 3
//   moduli 2147483647 2147483629 ...

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "skolem/gray.hpp"

namespace skolem {

/// Free-form provenance lines (`manifest.<key> <value>`), sorted by key.
using Manifest = std::map<std::string, std::string>;

std::string format_job(const JobSpec& job, const Manifest& manifest = {});
JobSpec parse_job(std::string_view text);

std::string format_result(const JobResult& result, const Manifest& manifest = {});
JobResult parse_result(std::string_view text, Manifest* manifest = nullptr);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace skolem
