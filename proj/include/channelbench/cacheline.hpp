#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "channelbench/gap.hpp"
#include "channelbench/graph.hpp"
#include "channelbench/kernels.hpp"

namespace channelbench {

/// Cache geometry for trace replay. Without a capacity the model keeps a
/// single line of lookback per array (pure spatial locality). With a capacity
/// it runs an LRU cache; a missing associativity means fully associative.
struct CacheConfig {
  std::uint32_t line_bytes = 64;
  std::uint32_t elem_bytes = 4;
  std::optional<std::uint64_t> capacity_bytes;
  std::optional<std::uint32_t> associativity;

  void validate() const;
  std::uint32_t elems_per_line() const noexcept { return line_bytes / elem_bytes; }
};

struct CacheLineStats {
  std::uint64_t lines_fetched = 0;
  std::uint64_t bytes_used = 0;
  std::uint64_t bytes_fetched = 0;
  double utilization = 0.0;
  std::uint64_t stream_accesses = 0;
  std::uint64_t random_accesses = 0;

  friend bool operator==(const CacheLineStats&, const CacheLineStats&) = default;
};

/// Replays the adjacency address sequence of one pull phase: every real slot,
/// vertex by vertex, at the graph's stride. Arrays are line-aligned at 0.
CacheLineStats trace_streaming(const Csr& g, const CacheConfig& cfg);
CacheLineStats trace_streaming(const GappedCsr& gg, const CacheConfig& cfg);

/// A single contiguous array of `n` real elements diluted with `gap` dummies.
CacheLineStats trace_streaming_synthetic(std::uint64_t n, std::uint32_t gap, const CacheConfig& cfg);

/// Element-index accesses into one array of `array_len` elements. Throws
/// Error{range} on an out-of-bounds index.
CacheLineStats trace_random(std::span<const std::uint64_t> indices, std::uint64_t array_len,
                            const CacheConfig& cfg);

/// Replays the accesses of a kernel trace that touch `array`.
CacheLineStats replay_trace(std::span<const TracedAccess> trace, ArrayTag array,
                            const CacheConfig& cfg);

/// Lines fetched streaming the gapped graph over lines fetched streaming the
/// original.
double fetch_ratio(const Csr& g, std::uint32_t gap, const CacheConfig& cfg);
double fetch_ratio_synthetic(std::uint64_t n, std::uint32_t gap, const CacheConfig& cfg);

}  // namespace channelbench
