#include <gtest/gtest.h>

#include "channelbench/error.hpp"
#include "channelbench/report.hpp"
#include "support/schema.hpp"

namespace channelbench {
namespace {

const std::filesystem::path kGolden = CHANNELBENCH_GOLDEN_DIR;

SweepRow sample_row(std::uint32_t gap, std::uint32_t repeat) {
  SweepRow r;
  r.graph = "lj";
  r.gap = gap;
  r.threads = 8;
  r.iterations = 20;
  r.repeat = repeat;
  r.streaming_ns = 300 + repeat;
  r.total_ns = 1000;
  r.s_frac = 0.301;
  r.checksum = 0x0123456789abcdefULL;
  return r;
}

TEST(Schema, SweepHeaderGolden) {
  EXPECT_EQ(testing::read_text(kGolden / "gap_sweep_header.csv"), std::string(kSweepCsvHeader) + "\n");
}

TEST(Schema, ModelKeysGolden) {
  EXPECT_EQ(testing::key_paths_text(testing::sample_model_report()),
            testing::read_text(kGolden / "model_keys.txt"));
}

TEST(Schema, CachesimKeysGolden) {
  EXPECT_EQ(testing::key_paths_text(testing::sample_cachesim_report()),
            testing::read_text(kGolden / "cachesim_keys.txt"));
}

TEST(Schema, VersionTags) {
  EXPECT_EQ(testing::sample_model_report()["schema"], "channelbench.model/1");
  EXPECT_EQ(testing::sample_cachesim_report()["schema"], "channelbench.cachesim/1");
}

TEST(Checksum, FormatAndParse) {
  EXPECT_EQ(format_checksum(0), "0x0000000000000000");
  EXPECT_EQ(format_checksum(0xcbf29ce484222325ULL), "0xcbf29ce484222325");
  EXPECT_EQ(parse_checksum("0xcbf29ce484222325"), 0xcbf29ce484222325ULL);
  EXPECT_THROW(parse_checksum("cbf29ce484222325"), Error);
  EXPECT_THROW(parse_checksum("0xcbf29ce48422232g"), Error);
  EXPECT_THROW(parse_checksum("0x1"), Error);
}

TEST(SweepCsv, RowFormat) {
  EXPECT_EQ(format_sweep_row(sample_row(4, 2)), "lj,pagerank,4,8,20,2,302,1000,0.301000000,0x0123456789abcdef");
}

TEST(SweepCsv, RoundTrip) {
  std::string text = std::string(kSweepCsvHeader) + "\n";
  std::vector<SweepRow> rows;
  for (std::uint32_t g : {0u, 4u}) {
    for (std::uint32_t rep = 0; rep < 3; ++rep) {
      rows.push_back(sample_row(g, rep));
      text += format_sweep_row(rows.back()) + "\n";
    }
  }
  EXPECT_EQ(parse_sweep_csv(text), rows);
}

TEST(SweepCsv, ParseErrors) {
  const std::string header(kSweepCsvHeader);
  EXPECT_THROW(parse_sweep_csv(""), Error);
  EXPECT_THROW(parse_sweep_csv("graph,kernel\n"), Error);
  EXPECT_THROW(parse_sweep_csv(header + "\nlj,pagerank,0,1\n"), Error);
  EXPECT_THROW(parse_sweep_csv(header + "\nlj,pagerank,x,1,20,0,1,2,0.5,0x0000000000000000\n"), Error);
  try {
    parse_sweep_csv(header + "\n" + format_sweep_row(sample_row(0, 0)) + "\nbad\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

SweepSummary summary(std::uint32_t gap, std::uint32_t threads, std::uint64_t s, std::uint64_t t) {
  SweepSummary x;
  x.gap = gap;
  x.threads = threads;
  x.median = {s, t, threads, gap, 20};
  return x;
}

TEST(Observations, ChannelLimitedShape) {
  SweepTable t;
  t.summaries = {summary(0, 1, 50, 1000), summary(0, 64, 50, 1000), summary(4, 64, 300, 1600)};
  const auto obs = sweep_observations(t);
  ASSERT_EQ(obs.size(), 2u);
  EXPECT_EQ(obs[0].name, "gap4_total_over_baseline");
  EXPECT_DOUBLE_EQ(*obs[0].value, 1.6);
  EXPECT_EQ(obs[0].status, "pass");
  EXPECT_EQ(obs[1].name, "baseline_streaming_fraction");
  EXPECT_DOUBLE_EQ(*obs[1].value, 0.05);
  EXPECT_EQ(obs[1].status, "pass");
}

TEST(Observations, MissesAreInfoNotFailures) {
  SweepTable t;
  t.summaries = {summary(0, 2, 500, 1000), summary(4, 2, 600, 1100)};
  const auto obs = sweep_observations(t);
  EXPECT_EQ(obs[0].status, "info");
  EXPECT_EQ(obs[1].status, "info");
  t.summaries = {summary(0, 2, 500, 1000)};
  EXPECT_EQ(sweep_observations(t)[0].status, "unavailable");
  EXPECT_FALSE(sweep_observations(t)[0].value.has_value());
}

TEST(Manifest, Fields) {
  const RunManifest m = make_manifest("channelbench prep", {{"seed", 3}});
  EXPECT_EQ(m.tool_version, kToolVersion);
  EXPECT_FALSE(m.host.empty());
  EXPECT_EQ(m.timestamp.size(), 20u);  // YYYY-MM-DDTHH:MM:SSZ
  const ordered_json j = to_json(m);
  EXPECT_EQ(j["config"]["seed"], 3);
  EXPECT_TRUE(j["graph"]["digest"].is_null());
}

TEST(Manifest, FileDigestIsFnvOfBytes) {
  const auto path = std::filesystem::temp_directory_path() / "channelbench_digest_test.bin";
  {
    std::ofstream out(path, std::ios::binary);
    out << "foobar";
  }
  EXPECT_EQ(file_digest(path), 0x340d8765a4dda9c2ULL);
  std::filesystem::remove(path);
  EXPECT_THROW(file_digest(path), Error);
}

TEST(KeyPaths, ArraysUseFirstElement) {
  const ordered_json j = ordered_json::parse(R"({"a":[{"b":1},{"c":2}],"d":{"e":[1,2]}})");
  EXPECT_EQ(json_key_paths(j), (std::vector<std::string>{"a", "a[].b", "d", "d.e"}));
}

}  // namespace
}  // namespace channelbench
