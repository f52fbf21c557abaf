#include <gtest/gtest.h>

#include "channelbench/cacheline.hpp"
#include "channelbench/error.hpp"
#include "channelbench/gap.hpp"
#include "support/random_graphs.hpp"

namespace channelbench {
namespace {

constexpr vertex_t S = kGapSentinel;

Csr star3() { return build_csr(preprocess({{{0, 1}, {0, 2}, {0, 3}}, 4})); }

// Steps by fixed amounts on successive calls, cycling through `deltas`.
Clock scripted_clock(std::vector<std::uint64_t> deltas) {
  auto state = std::make_shared<std::pair<std::uint64_t, std::size_t>>(1000, 0);
  return [state, deltas] {
    const std::uint64_t now = state->first;
    state->first += deltas[state->second++ % deltas.size()];
    return now;
  };
}

TEST(InsertGaps, ZeroGapIsIdentity) {
  const Csr g = testing::random_csr(100, 300, 1);
  const GappedCsr gg = insert_gaps(g, 0);
  EXPECT_EQ(gg.adjacency, std::vector<vertex_t>(g.adjacency().begin(), g.adjacency().end()));
  EXPECT_EQ(gg.offsets, std::vector<offset_t>(g.offsets().begin(), g.offsets().end()));
}

TEST(InsertGaps, ThreeNeighborsGapTwo) {
  const GappedCsr gg = insert_gaps(star3(), 2);
  const std::vector<vertex_t> slice(gg.adjacency.begin() + gg.offsets[0],
                                    gg.adjacency.begin() + gg.offsets[1]);
  EXPECT_EQ(slice, (std::vector<vertex_t>{1, S, S, 2, S, S, 3, S, S}));
  EXPECT_EQ(gg.offsets, (std::vector<offset_t>{0, 9, 12, 15, 18}));
}

TEST(InsertGaps, SizeLawOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Csr g = testing::random_csr(200, 700, seed);
    for (std::uint32_t gap = 0; gap <= 32; ++gap) {
      const GappedCsr gg = insert_gaps(g, gap);
      EXPECT_EQ(gg.adjacency.size(), (std::uint64_t{gap} + 1) * g.num_edges());
      EXPECT_EQ(project_base(gg), g) << "gap " << gap;
    }
  }
}

TEST(InsertGaps, LargeGraphGapOneDoublesEntriesAndLines) {
  // 35M undirected edges stored in both directions.
  const std::uint64_t ne = 2ull * 35'000'000ull;
  EXPECT_EQ(gapped_length(ne, 1), 2 * ne);
  EXPECT_DOUBLE_EQ(fetch_ratio_synthetic(1 << 20, 1, CacheConfig{}), 2.0);
}

TEST(InsertGaps, OverflowDetected) {
  try {
    gapped_length(std::uint64_t{1} << 40, 0xffffffffu);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::overflow);
  }
}

TEST(ProjectBase, RoundTripThreePath) {
  const Csr g = testing::path_graph(3);
  for (std::uint32_t gap : {0u, 1u, 3u, 15u}) EXPECT_EQ(project_base(insert_gaps(g, gap)), g);
}

TEST(ProjectBase, StridedReadBack) {
  GappedCsr gg;
  gg.base_nv = 2;
  gg.base_ne = 2;
  gg.gap = 1;
  gg.offsets = {0, 2, 4};
  gg.adjacency = {1, S, 0, S};
  const Csr g = project_base(gg);
  EXPECT_EQ(std::vector<vertex_t>(g.adjacency().begin(), g.adjacency().end()),
            (std::vector<vertex_t>{1, 0}));
}

TEST(ProjectBase, TamperedSlotsRejected) {
  GappedCsr gg = insert_gaps(testing::path_graph(3), 2);
  gg.adjacency[3] = S;
  EXPECT_THROW(project_base(gg), Error);
  gg = insert_gaps(testing::path_graph(3), 2);
  gg.adjacency[1] = 0;
  EXPECT_THROW(project_base(gg), Error);
  gg = insert_gaps(testing::path_graph(3), 2);
  gg.adjacency.pop_back();
  EXPECT_THROW(project_base(gg), Error);
}

TEST(PageRankGapped, BitwiseEqualToUngapped) {
  const Csr g = testing::random_csr(2000, 9000, 5);
  const KernelResult base = pagerank(g, {});
  for (std::uint32_t gap : {0u, 1u, 2u, 4u, 8u, 15u, 16u}) {
    const KernelResult r = pagerank_gapped(insert_gaps(g, gap), {});
    EXPECT_EQ(r.scores, base.scores) << gap;
    EXPECT_EQ(r.checksum, base.checksum);
    EXPECT_EQ(r.timing.gap, gap);
  }
}

TEST(PageRankGapped, TwoCycleGapSeven) {
  const KernelResult r = pagerank_gapped(insert_gaps(build_csr({{{0, 1}, {1, 0}}, 2}), 7), {});
  EXPECT_NEAR(r.scores[0], 0.5, 1e-15);
  EXPECT_NEAR(r.scores[1], 0.5, 1e-15);
}

TEST(PageRankGapped, StreamingOnlyIgnoresDummies) {
  const Csr g = testing::random_csr(500, 2000, 9);
  const KernelResult base = pagerank_streaming_only(g, {});
  for (std::uint32_t gap : {1u, 5u, 16u}) {
    const KernelResult r = pagerank_gapped_streaming_only(insert_gaps(g, gap), {});
    EXPECT_EQ(r.stream_sink, base.stream_sink);
    EXPECT_EQ(r.checksum, base.checksum);
  }
}

TEST(PageRankGapped, TraceNeverTouchesDummySlots) {
  const Csr g = testing::random_csr(300, 1000, 2);
  const GappedCsr gg = insert_gaps(g, 3);
  for (const auto& a : trace_pull_phase(gg, PullVariant::full)) {
    if (a.array == ArrayTag::adjacency) {
      EXPECT_EQ(a.index % 4, 0u);
      EXPECT_NE(gg.adjacency[a.index], S);
    }
  }
}

TEST(PageRankGapped, GapFifteenPutsEveryRealSlotOnItsOwnLine) {
  const Csr g = testing::random_csr(300, 1000, 4);
  for (std::uint32_t gap : {15u, 16u, 31u}) {
    const CacheLineStats s = trace_streaming(insert_gaps(g, gap), CacheConfig{});
    EXPECT_EQ(s.lines_fetched, g.num_edges());
  }
}

TEST(GapSweep, SingleConfiguration) {
  const Csr g = testing::random_csr(200, 800, 1);
  const std::vector<std::uint32_t> gaps{0}, threads{1};
  std::vector<SweepRow> seen;
  SweepOptions opts;
  opts.graph_name = "rand";
  opts.on_row = [&](const SweepRow& r) { seen.push_back(r); };
  const SweepTable t = run_gap_sweep(g, gaps, threads, {}, opts);
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(seen, t.rows);
  for (const SweepRow& r : t.rows) {
    EXPECT_GT(r.streaming_ns, 0u);
    EXPECT_GT(r.total_ns, 0u);
    EXPECT_LE(r.streaming_ns, r.total_ns);
    EXPECT_EQ(r.graph, "rand");
    EXPECT_EQ(r.kernel, "pagerank");
    EXPECT_EQ(r.iterations, 20u);
  }
  ASSERT_EQ(t.summaries.size(), 1u);
  EXPECT_EQ(t.summaries[0].streaming_raw_ns.size(), 5u);
}

TEST(GapSweep, BaselinePrependedAndChecksumsGapInvariant) {
  const Csr g = testing::random_csr(400, 1600, 2);
  const std::vector<std::uint32_t> gaps{2, 8}, threads{1, 3};
  SweepOptions opts;
  opts.repeats = 2;
  const SweepTable t = run_gap_sweep(g, gaps, threads, {}, opts);
  ASSERT_EQ(t.rows.size(), 3u * 2u * 2u);
  EXPECT_EQ(t.rows.front().gap, 0u);
  const std::uint64_t expected = pagerank(g, {}).checksum;
  for (const SweepRow& r : t.rows) EXPECT_EQ(r.checksum, expected);
  for (const SweepSummary& s : t.summaries) {
    EXPECT_EQ(s.streaming_checksum, t.summaries.front().streaming_checksum);
  }
}

TEST(GapSweep, ScriptedClockGivesExactRows) {
  const Csr g = testing::path_graph(4);
  const std::vector<std::uint32_t> gaps{0, 4}, threads{2};
  SweepOptions opts;
  opts.repeats = 3;
  opts.clock = scripted_clock({300, 1000, 0});
  const SweepTable t = run_gap_sweep(g, gaps, threads, {}, opts);
  for (const SweepRow& r : t.rows) {
    EXPECT_EQ(r.streaming_ns, 300u);
    EXPECT_EQ(r.total_ns, 1000u);
    EXPECT_DOUBLE_EQ(r.s_frac, 0.3);
  }
}

TEST(GapSweep, EmptyListsRejected) {
  const Csr g = testing::path_graph(3);
  const std::vector<std::uint32_t> none, one{1};
  EXPECT_THROW(run_gap_sweep(g, none, one, {}), Error);
  EXPECT_THROW(run_gap_sweep(g, one, none, {}), Error);
}

TEST(GapSweep, KernelErrorsPropagateAfterFlushingRows) {
  const Csr g = build_csr({{{0, 1}, {1, 0}}, 3});  // vertex 2 has degree 0
  const std::vector<std::uint32_t> gaps{0}, threads{1};
  std::size_t rows = 0;
  SweepOptions opts;
  opts.on_row = [&](const SweepRow&) { ++rows; };
  EXPECT_THROW(run_gap_sweep(g, gaps, threads, {}, opts), Error);
  EXPECT_EQ(rows, 0u);
}

}  // namespace
}  // namespace channelbench
