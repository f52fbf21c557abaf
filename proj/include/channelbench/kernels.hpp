#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "channelbench/graph.hpp"
#include "channelbench/phase_timing.hpp"

namespace channelbench {

enum class Schedule {
  static_blocks,    // equal vertex counts per worker
  degree_balanced,  // equal edge counts per worker
};

struct PageRankConfig {
  double damping = 0.85;
  std::uint32_t iterations = 20;
  std::uint32_t threads = 1;
  // Strict mode rejects zero-degree vertices; lenient mode gives them a zero
  // contribution.
  bool strict = true;
  Schedule schedule = Schedule::static_blocks;
};

/// Scores (PageRank) or distances (BFS), plus a digest of them.
struct KernelResult {
  std::vector<double> scores;
  std::vector<vertex_t> distances;
  // Wrapping sum of every neighbor id streamed by the streaming-only variant.
  std::uint64_t stream_sink = 0;
  std::uint64_t checksum = 0;
  PhaseTiming timing;
};

inline constexpr vertex_t kUnreached = std::numeric_limits<vertex_t>::max();

/// Pull-based PageRank, fixed iteration count. Bitwise identical results for
/// every thread count and schedule.
KernelResult pagerank(const Csr& g, const PageRankConfig& cfg);

/// Same control flow as pagerank(), but the inner loop only folds the streamed
/// neighbor ids into a sink instead of reading contributions.
KernelResult pagerank_streaming_only(const Csr& g, const PageRankConfig& cfg);

/// Level-synchronous top-down BFS. Unreachable vertices hold kUnreached.
KernelResult bfs_top_down(const Csr& g, vertex_t source, std::uint32_t threads = 1);

// FNV-1 over the little-endian byte image of the output array.
std::uint64_t checksum_scores(std::span<const double> scores);
std::uint64_t checksum_scores(std::span<const double> scores, std::uint64_t stream_sink);
std::uint64_t checksum_distances(std::span<const vertex_t> distances);

void validate_pagerank_config(const PageRankConfig& cfg);

// Access tracing. Replays one pull phase single-threaded and records every
// inner-loop array access, in program order.
enum class ArrayTag : std::uint8_t { adjacency, contrib };
enum class AccessKind : std::uint8_t { stream, random };
enum class PullVariant { full, streaming_only };

struct TracedAccess {
  ArrayTag array;
  AccessKind kind;
  std::uint64_t index;

  friend bool operator==(const TracedAccess&, const TracedAccess&) = default;
};

std::vector<TracedAccess> trace_pull_phase(const detail::AdjacencyView& g, PullVariant variant);

namespace detail {

KernelResult run_pagerank(const AdjacencyView& g, const PageRankConfig& cfg, PullVariant variant);

}  // namespace detail
}  // namespace channelbench
