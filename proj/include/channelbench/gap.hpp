#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "channelbench/graph.hpp"
#include "channelbench/kernels.hpp"
#include "channelbench/phase_timing.hpp"

namespace channelbench {

/// Dummy slot value. Traversals jump over it, so it is never read.
inline constexpr vertex_t kGapSentinel = std::numeric_limits<vertex_t>::max();

/// CSR whose adjacency has `gap` dummy slots after every real neighbor, so a
/// vertex slice occupies degree * (gap + 1) entries. Offsets are in gapped
/// positions.
struct GappedCsr {
  std::uint64_t base_nv = 0;
  std::uint64_t base_ne = 0;
  std::uint32_t gap = 0;
  std::vector<offset_t> offsets{0};
  std::vector<vertex_t> adjacency;

  std::uint64_t stride() const noexcept { return std::uint64_t{gap} + 1; }

  detail::AdjacencyView view() const noexcept { return {offsets, adjacency, stride()}; }
};

/// ne * (gap + 1), or Error{overflow} when it does not fit an addressable array.
std::uint64_t gapped_length(std::uint64_t ne, std::uint32_t gap);

GappedCsr insert_gaps(const Csr& g, std::uint32_t gap);

/// Strided read-back of the real slots. Throws Error{invariant} if the layout
/// is inconsistent or a real slot holds the sentinel.
Csr project_base(const GappedCsr& gg);

KernelResult pagerank_gapped(const GappedCsr& gg, const PageRankConfig& cfg);
KernelResult pagerank_gapped_streaming_only(const GappedCsr& gg, const PageRankConfig& cfg);

std::vector<TracedAccess> trace_pull_phase(const GappedCsr& gg, PullVariant variant);

// Gap sweep --------------------------------------------------------------

/// One timed repeat of one (gap, threads) configuration. streaming_ns is
/// already clamped to total_ns.
struct SweepRow {
  std::string graph;
  std::string kernel = "pagerank";
  std::uint32_t gap = 0;
  std::uint32_t threads = 1;
  std::uint32_t iterations = 0;
  std::uint32_t repeat = 0;
  std::uint64_t streaming_ns = 0;
  std::uint64_t total_ns = 0;
  double s_frac = 0.0;
  std::uint64_t checksum = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

/// Aggregates for one (gap, threads) configuration, including unclamped raw
/// streaming durations.
struct SweepSummary {
  std::uint32_t gap = 0;
  std::uint32_t threads = 1;
  PhaseTiming median;
  double streaming_mean_ns = 0.0;
  double total_mean_ns = 0.0;
  std::vector<std::uint64_t> streaming_raw_ns;
  std::vector<std::uint64_t> total_raw_ns;
  bool clamped = false;
  std::uint64_t pagerank_checksum = 0;
  std::uint64_t streaming_checksum = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summaries;
};

struct SweepOptions {
  std::string graph_name = "graph";
  std::uint32_t repeats = 5;
  Clock clock = steady_now_ns;
  // Invoked as soon as each row is measured, so callers can flush partial
  // results if a later configuration fails.
  std::function<void(const SweepRow&)> on_row;
};

std::vector<std::uint32_t> default_sweep_gaps();

/// Runs pagerank_gapped and its streaming-only twin for every (gap, threads)
/// pair. Gap 0 is prepended when absent.
SweepTable run_gap_sweep(const Csr& g, std::span<const std::uint32_t> gaps,
                         std::span<const std::uint32_t> threads, const PageRankConfig& cfg,
                         const SweepOptions& opts = {});

}  // namespace channelbench
