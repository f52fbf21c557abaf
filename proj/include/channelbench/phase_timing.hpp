#pragma once

#include <cstdint>
#include <functional>

namespace channelbench {

/// Durations of one kernel configuration, split into the adjacency-streaming
/// part and the whole run.
struct PhaseTiming {
  std::uint64_t streaming_ns = 0;
  std::uint64_t total_ns = 0;
  std::uint32_t threads = 1;
  std::uint32_t gap = 0;
  std::uint32_t iterations = 0;

  friend bool operator==(const PhaseTiming&, const PhaseTiming&) = default;
};

struct PhaseFractions {
  double streaming = 0.0;
  double random = 0.0;
};

/// streaming = S / T, random = 1 - streaming. Throws Error{config} when
/// total_ns is zero or streaming_ns exceeds it.
PhaseFractions phase_fractions(const PhaseTiming& t);

/// Monotonic nanosecond source. Tests substitute a scripted clock.
using Clock = std::function<std::uint64_t()>;

std::uint64_t steady_now_ns();

}  // namespace channelbench
