#include <gtest/gtest.h>

#include <filesystem>

#include "skolem/error.hpp"
#include "skolem/job_io.hpp"
#include "skolem/jobs.hpp"

namespace skolem {
namespace {

TEST(JobIo, JobRoundTrip) {
  for (const auto& job : partition(12, Variant::Skolem, 4)) {
    const std::string text = format_job(job);
    EXPECT_EQ(text.rfind("skolem-job 1\n", 0), 0u);
    EXPECT_EQ(parse_job(text), job);
    EXPECT_EQ(format_job(parse_job(text)), text);
  }
}

TEST(JobIo, ResultRoundTripWithManifest) {
  const auto jobs = partition(9, Variant::Langford, 2);
  const JobResult r = count_gray(jobs[1]);
  const Manifest manifest{{"command", "jobs run"}, {"version", "1.0.0"}};
  const std::string text = format_result(r, manifest);
  Manifest back;
  EXPECT_EQ(parse_result(text, &back), r);
  EXPECT_EQ(back, manifest);
  EXPECT_NE(text.find("manifest.command jobs run"), std::string::npos);
}

TEST(JobIo, RerunIsByteIdentical) {
  const auto job = partition(10, Variant::Skolem, 2)[0];
  EXPECT_EQ(format_result(count_gray(job)), format_result(count_gray(job)));
}

TEST(JobIo, RejectsBrokenFiles) {
  const auto job = partition(8, Variant::Skolem, 2)[0];
  std::string text = format_job(job);
  EXPECT_THROW(parse_job("skolem-result 1\n"), MalformedInput);
  EXPECT_THROW(parse_job(""), MalformedInput);
  EXPECT_THROW(parse_job(text + "n 9\n"), MalformedInput);
  EXPECT_THROW(parse_job(text.substr(0, text.find("moduli"))), MalformedInput);
  const auto pos = text.find("n 8");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 3, "n x");
  EXPECT_THROW(parse_job(text), MalformedInput);
}

TEST(JobIo, CommentsIgnored) {
  const auto job = partition(8, Variant::Skolem, 2)[1];
  EXPECT_EQ(parse_job("# queued by hand\n" + format_job(job) + "\n# end\n"), job);
}

TEST(JobIo, Files) {
  const auto dir = std::filesystem::temp_directory_path() / "skolem_job_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "a.job";
  const auto job = partition(8, Variant::Skolem, 1)[0];
  write_text_file(path, format_job(job));
  EXPECT_EQ(parse_job(read_text_file(path)), job);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(read_text_file(path), Error);
}

}  // namespace
}  // namespace skolem
