#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <omp.h>

#include "channelbench/error.hpp"
#include "channelbench/microbench.hpp"
#include "channelbench/rng.hpp"

namespace channelbench {

std::string_view to_string(Pattern p) { return p == Pattern::coalesced ? "coalesced" : "random"; }
std::string_view to_string(Direction d) { return d == Direction::read ? "read" : "write"; }

Pattern parse_pattern(std::string_view text) {
  if (text == "coalesced") return Pattern::coalesced;
  if (text == "random") return Pattern::random;
  throw Error(Errc::config, "unknown pattern '" + std::string(text) + "'");
}

Direction parse_direction(std::string_view text) {
  if (text == "read") return Direction::read;
  if (text == "write") return Direction::write;
  throw Error(Errc::config, "unknown direction '" + std::string(text) + "'");
}

void BenchConfig::validate() const {
  if (elem_bytes != 1 && elem_bytes != 2 && elem_bytes != 4 && elem_bytes != 8) {
    throw Error(Errc::config, "elem_bytes must be 1, 2, 4 or 8");
  }
  if (array_bytes < elem_bytes) throw Error(Errc::config, "array_bytes must be >= elem_bytes");
  if (ops == 0) throw Error(Errc::config, "ops must be positive");
  if (threads == 0) throw Error(Errc::config, "threads must be positive");
  if (ops > std::numeric_limits<std::uint64_t>::max() / elem_bytes) {
    throw Error(Errc::overflow, "ops * elem_bytes overflows 64 bits");
  }
}

double effective_gbps(std::uint64_t ops, std::uint32_t elem_bytes, std::uint64_t elapsed_ns) {
  const double bytes = static_cast<double>(ops) * static_cast<double>(elem_bytes);
  const double ns = static_cast<double>(elapsed_ns == 0 ? 1 : elapsed_ns);
  // bytes / ns == GB / s
  return bytes / ns;
}

namespace {

template <class T>
BandwidthResult run_typed(const BenchConfig& cfg, const Clock& clock) {
  const std::uint64_t n = cfg.elements();
  std::unique_ptr<T[]> data;
  try {
    data.reset(new T[n]);
  } catch (const std::bad_alloc&) {
    throw Error(Errc::overflow, "cannot allocate " + std::to_string(cfg.array_bytes) + " bytes");
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    data[i] = static_cast<T>((i + cfg.seed) * 0x9e3779b97f4a7c15ULL);
  }
  const T store_value = static_cast<T>(SplitMix64(cfg.seed).next());

  const std::uint32_t threads = cfg.threads;
  const std::uint64_t per_thread = cfg.ops / threads;
  std::vector<std::uint64_t> sums(threads, 0);
  T* const array = data.get();
  const bool random = cfg.pattern == Pattern::random;
  const bool read = cfg.direction == Direction::read;

  const std::uint64_t t0 = clock();
#pragma omp parallel for num_threads(threads) schedule(static, 1)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(threads); ++t) {
    const std::uint64_t begin = per_thread * static_cast<std::uint64_t>(t);
    const std::uint64_t end = t + 1 == static_cast<std::int64_t>(threads) ? cfg.ops : begin + per_thread;
    std::uint64_t sum = 0;
    if (read) {
      if (random) {
        for (std::uint64_t j = begin; j < end; ++j) sum += array[random_index(j, n)];
      } else {
        for (std::uint64_t j = begin; j < end; ++j) sum += array[j % n];
      }
    } else {
      if (random) {
        for (std::uint64_t j = begin; j < end; ++j) array[random_index(j, n)] = store_value;
      } else {
        for (std::uint64_t j = begin; j < end; ++j) array[j % n] = store_value;
      }
    }
    sums[t] = sum;
  }
  const std::uint64_t t1 = clock();

  BandwidthResult result;
  result.config = cfg;
  result.elapsed_ns = t1 - t0;
  result.effective_gbps = effective_gbps(cfg.ops, cfg.elem_bytes, result.elapsed_ns);
  if (read) {
    std::uint64_t total = 0;
    for (auto s : sums) total += s;
    result.checksum = total;
  } else {
    // Word-wise FNV-1 fold of the final array.
    std::uint64_t h = kFnv64OffsetBasis;
    for (std::uint64_t i = 0; i < n; ++i) {
      h *= kFnv64Prime;
      h ^= static_cast<std::uint64_t>(array[i]);
    }
    result.checksum = h;
  }
  return result;
}

}  // namespace

BandwidthResult run_bench(const BenchConfig& cfg, const Clock& clock) {
  cfg.validate();
  switch (cfg.elem_bytes) {
    case 1: return run_typed<std::uint8_t>(cfg, clock);
    case 2: return run_typed<std::uint16_t>(cfg, clock);
    case 4: return run_typed<std::uint32_t>(cfg, clock);
    default: return run_typed<std::uint64_t>(cfg, clock);
  }
}

}  // namespace channelbench
