#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "channelbench/error.hpp"
#include "channelbench/graph.hpp"
#include "channelbench/rng.hpp"
#include "support/random_graphs.hpp"

namespace channelbench {
namespace {

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected channelbench::Error";
  return Errc::io;
}

std::vector<std::uint64_t> sorted_degrees(const Csr& g) {
  std::vector<std::uint64_t> d;
  for (vertex_t v = 0; v < g.num_vertices(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("cb_graph_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::filesystem::path write(const std::string& name, const std::string& content) {
    const auto p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

  std::filesystem::path dir_;
};

// --- load_edge_list ---------------------------------------------------------

TEST(EdgeListParse, TwoEdges) {
  const EdgeList el = parse_edge_list("0 1\n1 2\n");
  EXPECT_EQ(el.edges, (std::vector<Edge>{{0, 1}, {1, 2}}));
  EXPECT_EQ(el.nv_hint, 3u);
}

TEST(EdgeListParse, CommentSkippedSelfLoopKept) {
  const EdgeList el = parse_edge_list("# c\n2 2\n");
  EXPECT_EQ(el.edges, (std::vector<Edge>{{2, 2}}));
  EXPECT_EQ(el.nv_hint, 3u);
}

TEST(EdgeListParse, MalformedTokenReportsLine) {
  try {
    parse_edge_list("0 x\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  try {
    parse_edge_list("% header\n0 1\n\n3 -1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(EdgeListParse, RejectsEmptyAndWrongArity) {
  EXPECT_EQ(error_code([] { parse_edge_list("# only comments\n"); }), Errc::empty_graph);
  EXPECT_EQ(error_code([] { parse_edge_list("0 1 2\n"); }), Errc::parse);
  EXPECT_EQ(error_code([] { parse_edge_list("0 4294967295\n"); }), Errc::parse);
}

TEST(EdgeListParse, HandlesCrlfAndTabs) {
  const EdgeList el = parse_edge_list("0\t1\r\n  3   2  \r\n");
  EXPECT_EQ(el.edges, (std::vector<Edge>{{0, 1}, {3, 2}}));
  EXPECT_EQ(el.nv_hint, 4u);
}

TEST_F(TempDir, LoadFromFileAndMissingFile) {
  const auto p = write("g.txt", "0 1\n1 2\n");
  EXPECT_EQ(load_edge_list(p).edges.size(), 2u);
  EXPECT_EQ(error_code([&] { load_edge_list(dir_ / "nope.txt"); }), Errc::io);
}

// --- load_matrix_market -----------------------------------------------------

TEST(MatrixMarket, PatternGeneralIsZeroBased) {
  const EdgeList el =
      parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n% c\n2 2 1\n1 2\n");
  EXPECT_EQ(el.edges, (std::vector<Edge>{{0, 1}}));
}

TEST(MatrixMarket, RealValuesIgnored) {
  const EdgeList el =
      parse_matrix_market("%%MatrixMarket matrix coordinate real general\n3 3 1\n3 1 0.25\n");
  EXPECT_EQ(el.edges, (std::vector<Edge>{{2, 0}}));
  EXPECT_EQ(el.nv_hint, 3u);
}

TEST(MatrixMarket, SymmetricStoresEachEntryOnce) {
  const EdgeList el = parse_matrix_market(
      "%%MatrixMarket matrix coordinate integer symmetric\n3 3 2\n2 1 5\n3 2 7\n");
  EXPECT_EQ(el.edges, (std::vector<Edge>{{1, 0}, {2, 1}}));
}

TEST(MatrixMarket, IndexOutOfDeclaredRange) {
  EXPECT_EQ(error_code([] {
              parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n3 1\n");
            }),
            Errc::range);
  EXPECT_EQ(error_code([] {
              parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n0 1\n");
            }),
            Errc::range);
}

TEST(MatrixMarket, UnsupportedHeaders) {
  EXPECT_EQ(error_code([] { parse_matrix_market("%%MatrixMarket matrix array real general\n2 2\n"); }),
            Errc::parse);
  EXPECT_EQ(error_code([] {
              parse_matrix_market("%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 1 1 0\n");
            }),
            Errc::parse);
  EXPECT_EQ(error_code([] { parse_matrix_market("1 2\n"); }), Errc::parse);
}

TEST(MatrixMarket, EntryCountMustMatch) {
  EXPECT_EQ(error_code([] {
              parse_matrix_market("%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n");
            }),
            Errc::parse);
}

// --- preprocess ---------------------------------------------------------------

TEST(Preprocess, DropsSelfLoopAndSymmetrizes) {
  const EdgeList out = preprocess({{{1, 1}, {0, 1}}, 2});
  EXPECT_EQ(out.edges, (std::vector<Edge>{{0, 1}, {1, 0}}));
  EXPECT_EQ(out.nv_hint, 2u);
}

TEST(Preprocess, Dedups) {
  const EdgeList out = preprocess({{{0, 1}, {1, 0}, {0, 1}}, 2});
  EXPECT_EQ(out.edges, (std::vector<Edge>{{0, 1}, {1, 0}}));
}

TEST(Preprocess, DropsSingletonAndCompacts) {
  const EdgeList out = preprocess({{{0, 2}}, 3});
  EXPECT_EQ(out.edges, (std::vector<Edge>{{0, 1}, {1, 0}}));
  EXPECT_EQ(out.nv_hint, 2u);
}

TEST(Preprocess, OnlySelfLoopsIsEmpty) {
  EXPECT_EQ(error_code([] { preprocess({{{0, 0}, {1, 1}}, 2}); }), Errc::empty_graph);
}

TEST(Preprocess, FlagsCanBeDisabled) {
  PreprocessOptions keep;
  keep.symmetrize = false;
  keep.drop_self_loops = false;
  keep.dedup = false;
  keep.drop_singletons = false;
  const EdgeList out = preprocess({{{2, 2}, {0, 2}, {0, 2}}, 4}, keep);
  EXPECT_EQ(out.edges, (std::vector<Edge>{{0, 2}, {0, 2}, {2, 2}}));
  EXPECT_EQ(out.nv_hint, 4u);
}

TEST(Preprocess, IdempotentOnRandomInputs) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const EdgeList raw = testing::random_edge_list(2 + seed % 40, 1 + seed * 3, seed);
    EdgeList once;
    try {
      once = preprocess(raw);
    } catch (const Error&) {
      continue;  // all self-loops
    }
    EXPECT_EQ(preprocess(once), once) << seed;
  }
}

TEST(Preprocess, NeverYieldsZeroDegree) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Csr g = testing::random_csr(200, 150, seed);
    EXPECT_GE(g.min_degree(), 1u);
  }
}

// --- randomize_ids ------------------------------------------------------------

TEST(RandomPermutation, MatchesXoshiroReferenceVectors) {
  // xoshiro256** reference output for state {1, 2, 3, 4}.
  Xoshiro256StarStar rng(std::array<std::uint64_t, 4>{1, 2, 3, 4});
  EXPECT_EQ(rng(), 11520u);
  EXPECT_EQ(rng(), 0u);
  EXPECT_EQ(rng(), 1509978240u);
  EXPECT_EQ(rng(), 1215971899390074240u);
  EXPECT_EQ(SplitMix64(0).next(), 0xe220a8397b1dcdafULL);
}

TEST(RandomPermutation, GoldenSeed42) {
  // Computed once with an independent script implementation of SplitMix64 +
  // xoshiro256** + Fisher-Yates and frozen.
  EXPECT_EQ(random_permutation(3, 42), (std::vector<vertex_t>{1, 2, 0}));
  EXPECT_EQ(random_permutation(10, 42), (std::vector<vertex_t>{7, 3, 8, 9, 5, 6, 4, 1, 0, 2}));
}

TEST(RandomizeIds, SingleVertexIsIdentity) {
  EXPECT_EQ(random_permutation(1, 99), (std::vector<vertex_t>{0}));
}

TEST(RandomizeIds, GoldenPathSeed42) {
  const EdgeList path = preprocess({{{0, 1}, {1, 2}}, 3});
  const EdgeList out = randomize_ids(path, 42);
  EXPECT_EQ(out.edges, (std::vector<Edge>{{1, 2}, {2, 1}, {2, 0}, {0, 2}}));
  EXPECT_EQ(out.nv_hint, 3u);
}

TEST(RandomizeIds, SameSeedSamePermutation) {
  EXPECT_EQ(random_permutation(1000, 5), random_permutation(1000, 5));
  EXPECT_NE(random_permutation(1000, 5), random_permutation(1000, 6));
}

TEST(RandomizeIds, PreservesCountsAndDegreeMultiset) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const EdgeList clean = preprocess(testing::random_edge_list(60, 120, seed + 1000));
    const EdgeList shuffled = randomize_ids(clean, seed);
    EXPECT_EQ(shuffled.nv_hint, clean.nv_hint);
    EXPECT_EQ(shuffled.edges.size(), clean.edges.size());
    EXPECT_EQ(sorted_degrees(build_csr(shuffled)), sorted_degrees(build_csr(clean)));
  }
}

TEST(RandomizeIds, PermutationIsBijective) {
  auto perm = random_permutation(513, 11);
  std::sort(perm.begin(), perm.end());
  std::vector<vertex_t> id(513);
  std::iota(id.begin(), id.end(), 0u);
  EXPECT_EQ(perm, id);
}

// --- build_csr ------------------------------------------------------------------

TEST(BuildCsr, SingleEdge) {
  const Csr g = build_csr({{{0, 1}, {1, 0}}, 2});
  EXPECT_EQ(std::vector<offset_t>(g.offsets().begin(), g.offsets().end()),
            (std::vector<offset_t>{0, 1, 2}));
  EXPECT_EQ(std::vector<vertex_t>(g.adjacency().begin(), g.adjacency().end()),
            (std::vector<vertex_t>{1, 0}));
}

TEST(BuildCsr, ThreePath) {
  const Csr g = build_csr(preprocess({{{0, 1}, {1, 2}}, 3}));
  EXPECT_EQ(std::vector<offset_t>(g.offsets().begin(), g.offsets().end()),
            (std::vector<offset_t>{0, 1, 3, 4}));
  EXPECT_EQ(std::vector<vertex_t>(g.adjacency().begin(), g.adjacency().end()),
            (std::vector<vertex_t>{1, 0, 2, 1}));
}

TEST(BuildCsr, RejectsDuplicatesSelfLoopsAndAsymmetry) {
  EXPECT_EQ(error_code([] { build_csr({{{0, 1}, {0, 1}, {1, 0}}, 2}); }), Errc::invariant);
  EXPECT_EQ(error_code([] { build_csr({{{0, 0}}, 1}); }), Errc::invariant);
  EXPECT_EQ(error_code([] { build_csr({{{0, 1}}, 2}); }), Errc::invariant);
  EXPECT_EQ(error_code([] { build_csr({{{0, 5}}, 2}); }), Errc::range);
}

TEST(BuildCsr, DegreeSumEqualsEdgeCount) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Csr g = testing::random_csr(300, 900, seed);
    std::uint64_t sum = 0;
    for (vertex_t v = 0; v < g.num_vertices(); ++v) sum += g.degree(v);
    EXPECT_EQ(sum, g.num_edges());
  }
}

TEST(BuildCsr, UnsortedInputGetsSortedSlices) {
  const Csr g = build_csr({{{0, 2}, {0, 1}, {2, 0}, {1, 0}}, 3});
  EXPECT_EQ(std::vector<vertex_t>(g.neighbors(0).begin(), g.neighbors(0).end()),
            (std::vector<vertex_t>{1, 2}));
}

// --- binary format ----------------------------------------------------------------

TEST_F(TempDir, BinaryRoundTripThreePath) {
  const Csr g = testing::path_graph(3);
  const auto p = dir_ / "p3.csr";
  write_csr_binary(g, p);
  EXPECT_EQ(read_csr_binary(p), g);
  EXPECT_EQ(std::filesystem::file_size(p), 28u + 4 * 8 + 4 * 4);
}

TEST(BinaryFormat, ByteExactLayout) {
  const auto bytes = encode_csr_binary(build_csr({{{0, 1}, {1, 0}}, 2}));
  const std::vector<std::uint8_t> expected = {
      'C', 'B', 'C', 'S', 1, 0, 0, 0, 0, 0, 0, 0,              // magic, version, reserved
      2,   0,   0,   0,   0, 0, 0, 0,                          // nv
      2,   0,   0,   0,   0, 0, 0, 0,                          // ne
      0,   0,   0,   0,   0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0,  // offsets
      2,   0,   0,   0,   0, 0, 0, 0,                          //
      1,   0,   0,   0,   0, 0, 0, 0,                          // adjacency
  };
  EXPECT_EQ(bytes, expected);
}

TEST(BinaryFormat, RoundTripRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Csr g = testing::random_csr(100 + seed, 400, seed);
    EXPECT_EQ(decode_csr_binary(encode_csr_binary(g)), g);
  }
}

TEST(BinaryFormat, CorruptMagicVersionAndTruncation) {
  const auto good = encode_csr_binary(testing::path_graph(3));
  auto bad = good;
  bad[0] = 'X';
  EXPECT_EQ(error_code([&] { decode_csr_binary(bad); }), Errc::format);
  bad = good;
  bad[4] = 2;
  EXPECT_EQ(error_code([&] { decode_csr_binary(bad); }), Errc::format);
  bad = good;
  bad.pop_back();
  EXPECT_EQ(error_code([&] { decode_csr_binary(bad); }), Errc::format);
  bad = good;
  bad.push_back(0);
  EXPECT_EQ(error_code([&] { decode_csr_binary(bad); }), Errc::format);
  EXPECT_EQ(error_code([&] { decode_csr_binary(std::span(good).first(10)); }), Errc::format);
}

TEST(BinaryFormat, NonMonotoneOffsetsRejected) {
  auto bytes = encode_csr_binary(testing::path_graph(3));
  // offsets = [0,1,3,4]; make offsets[1] = 5.
  bytes[28 + 8] = 5;
  EXPECT_EQ(error_code([&] { decode_csr_binary(bytes); }), Errc::invariant);
}

}  // namespace
}  // namespace channelbench
