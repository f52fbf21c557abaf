#pragma once

#include <cstdint>
#include <string_view>

#include "channelbench/fnv.hpp"
#include "channelbench/phase_timing.hpp"

namespace channelbench {

enum class Pattern { coalesced, random };
enum class Direction { read, write };

std::string_view to_string(Pattern p);
std::string_view to_string(Direction d);
Pattern parse_pattern(std::string_view text);
Direction parse_direction(std::string_view text);

struct BenchConfig {
  std::uint64_t array_bytes = std::uint64_t{1} << 30;
  std::uint64_t ops = std::uint64_t{1} << 28;
  std::uint32_t threads = 1;
  std::uint32_t elem_bytes = 4;  // 1, 2, 4 or 8
  Pattern pattern = Pattern::coalesced;
  Direction direction = Direction::read;
  std::uint64_t seed = 0;

  void validate() const;
  std::uint64_t elements() const noexcept { return array_bytes / elem_bytes; }
};

struct BandwidthResult {
  double effective_gbps = 0.0;
  std::uint64_t elapsed_ns = 0;
  std::uint64_t checksum = 0;
  BenchConfig config;
};

/// ops * elem_bytes / seconds, in decimal GB/s. A zero duration is treated as
/// one nanosecond.
double effective_gbps(std::uint64_t ops, std::uint32_t elem_bytes, std::uint64_t elapsed_ns);

/// Index of the j-th random access: FNV-1 of j's 8 little-endian bytes, mod n.
inline std::uint64_t random_index(std::uint64_t j, std::uint64_t n) { return fnv1_64_u64(j) % n; }

/// Runs the benchmark. Only the access loop is timed. Reads publish the
/// wrapping sum of loaded values; writes publish a digest of the final array.
BandwidthResult run_bench(const BenchConfig& cfg, const Clock& clock = steady_now_ns);

}  // namespace channelbench
