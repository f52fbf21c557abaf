#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "channelbench/gap.hpp"
#include "channelbench/kernels.hpp"
#include "channelbench/phase_timing.hpp"

namespace channelbench {

/// What to time: a graph (gap 0 for the plain CSR) and a kernel configuration.
struct KernelRun {
  const GappedCsr& graph;
  PageRankConfig config;
  std::uint32_t repeats = 5;
};

struct RepeatSample {
  std::uint32_t repeat = 0;
  std::uint64_t streaming_ns = 0;  // raw, unclamped
  std::uint64_t total_ns = 0;
};

struct Measurement {
  // Medians; streaming clamped to total.
  PhaseTiming timing;
  std::uint64_t streaming_median_raw_ns = 0;
  double streaming_mean_ns = 0.0;
  double total_mean_ns = 0.0;
  bool clamped = false;
  std::vector<RepeatSample> samples;
  std::uint64_t pagerank_checksum = 0;
  std::uint64_t streaming_checksum = 0;
};

/// Times `repeats` streaming-only runs and `repeats` full runs, interleaved.
/// Streaming time is the streaming-only variant's wall time; total time is the
/// full kernel's. Throws Error{nondeterministic} if repeats disagree on their
/// checksums.
Measurement measure_kernel(const KernelRun& run, const Clock& clock = steady_now_ns);

std::uint64_t median_ns(std::span<const std::uint64_t> values);
double mean_ns(std::span<const std::uint64_t> values);

}  // namespace channelbench
