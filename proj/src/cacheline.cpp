#include <bit>
#include <list>
#include <string>
#include <unordered_map>
#include <vector>

#include "channelbench/cacheline.hpp"
#include "channelbench/error.hpp"

namespace channelbench {

namespace {

// Which element slots of a resident line have been touched.
class SlotMask {
 public:
  explicit SlotMask(std::uint32_t slots) : words_((slots + 63) / 64, 0) {}

  void set(std::uint32_t slot) { words_[slot / 64] |= std::uint64_t{1} << (slot % 64); }

  std::uint64_t count() const {
    std::uint64_t n = 0;
    for (auto w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
  }

 private:
  std::vector<std::uint64_t> words_;
};

class LineTracker {
 public:
  explicit LineTracker(const CacheConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    if (cfg_.capacity_bytes) {
      const std::uint64_t lines = *cfg_.capacity_bytes / cfg_.line_bytes;
      ways_ = cfg_.associativity ? *cfg_.associativity : lines;
      sets_.resize(lines / ways_);
    }
  }

  void access(std::uint64_t elem_index, AccessKind kind) {
    (kind == AccessKind::stream ? stats_.stream_accesses : stats_.random_accesses)++;
    const std::uint64_t byte = elem_index * cfg_.elem_bytes;
    const std::uint64_t line = byte / cfg_.line_bytes;
    const auto slot = static_cast<std::uint32_t>((byte % cfg_.line_bytes) / cfg_.elem_bytes);
    if (sets_.empty()) {
      if (!current_ || current_line_ != line) {
        retire(current_);
        current_.emplace(cfg_.elems_per_line());
        current_line_ = line;
        ++stats_.lines_fetched;
      }
      current_->set(slot);
      return;
    }
    Set& set = sets_[line % sets_.size()];
    auto hit = set.index.find(line);
    if (hit != set.index.end()) {
      set.lru.splice(set.lru.begin(), set.lru, hit->second);
      hit->second->mask.set(slot);
      return;
    }
    ++stats_.lines_fetched;
    if (set.lru.size() == ways_) {
      stats_.bytes_used += set.lru.back().mask.count() * cfg_.elem_bytes;
      set.index.erase(set.lru.back().line);
      set.lru.pop_back();
    }
    set.lru.push_front({line, SlotMask(cfg_.elems_per_line())});
    set.lru.front().mask.set(slot);
    set.index.emplace(line, set.lru.begin());
  }

  CacheLineStats finish() {
    retire(current_);
    current_.reset();
    for (Set& set : sets_) {
      for (const Entry& e : set.lru) stats_.bytes_used += e.mask.count() * cfg_.elem_bytes;
      set.lru.clear();
      set.index.clear();
    }
    stats_.bytes_fetched = stats_.lines_fetched * cfg_.line_bytes;
    stats_.utilization = stats_.bytes_fetched == 0
                             ? 0.0
                             : static_cast<double>(stats_.bytes_used) /
                                   static_cast<double>(stats_.bytes_fetched);
    return stats_;
  }

 private:
  struct Entry {
    std::uint64_t line;
    SlotMask mask;
  };
  struct Set {
    std::list<Entry> lru;
    std::unordered_map<std::uint64_t, std::list<Entry>::iterator> index;
  };

  void retire(const std::optional<SlotMask>& mask) {
    if (mask) stats_.bytes_used += mask->count() * cfg_.elem_bytes;
  }

  CacheConfig cfg_;
  CacheLineStats stats_;
  std::optional<SlotMask> current_;
  std::uint64_t current_line_ = 0;
  std::uint64_t ways_ = 0;
  std::vector<Set> sets_;
};

CacheLineStats stream_layout(std::span<const offset_t> offsets, std::uint64_t stride,
                             const CacheConfig& cfg) {
  LineTracker tracker(cfg);
  for (std::size_t v = 0; v + 1 < offsets.size(); ++v) {
    for (offset_t e = offsets[v]; e < offsets[v + 1]; e += stride) {
      tracker.access(e, AccessKind::stream);
    }
  }
  return tracker.finish();
}

bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace

void CacheConfig::validate() const {
  if (!is_pow2(line_bytes)) throw Error(Errc::config, "line_bytes must be a power of two");
  if (!is_pow2(elem_bytes)) throw Error(Errc::config, "elem_bytes must be a power of two");
  if (line_bytes < elem_bytes) throw Error(Errc::config, "line_bytes must be >= elem_bytes");
  if (associativity && !capacity_bytes) {
    throw Error(Errc::config, "associativity requires a cache capacity");
  }
  if (capacity_bytes) {
    const std::uint64_t ways = associativity ? *associativity : 1;
    if (ways == 0) throw Error(Errc::config, "associativity must be positive");
    const std::uint64_t set_bytes = ways * line_bytes;
    if (*capacity_bytes == 0 || *capacity_bytes % set_bytes != 0) {
      throw Error(Errc::config, "capacity must be a positive multiple of line_bytes * ways");
    }
  }
}

CacheLineStats trace_streaming(const Csr& g, const CacheConfig& cfg) {
  return stream_layout(g.offsets(), 1, cfg);
}

CacheLineStats trace_streaming(const GappedCsr& gg, const CacheConfig& cfg) {
  return stream_layout(gg.offsets, gg.stride(), cfg);
}

CacheLineStats trace_streaming_synthetic(std::uint64_t n, std::uint32_t gap,
                                         const CacheConfig& cfg) {
  const std::vector<offset_t> offsets{0, gapped_length(n, gap)};
  return stream_layout(offsets, std::uint64_t{gap} + 1, cfg);
}

CacheLineStats trace_random(std::span<const std::uint64_t> indices, std::uint64_t array_len,
                            const CacheConfig& cfg) {
  LineTracker tracker(cfg);
  for (std::uint64_t i : indices) {
    if (i >= array_len) {
      throw Error(Errc::range, "trace_random: index " + std::to_string(i) +
                                   " outside array of " + std::to_string(array_len));
    }
    tracker.access(i, AccessKind::random);
  }
  return tracker.finish();
}

CacheLineStats replay_trace(std::span<const TracedAccess> trace, ArrayTag array,
                            const CacheConfig& cfg) {
  LineTracker tracker(cfg);
  for (const TracedAccess& a : trace) {
    if (a.array == array) tracker.access(a.index, a.kind);
  }
  return tracker.finish();
}

double fetch_ratio(const Csr& g, std::uint32_t gap, const CacheConfig& cfg) {
  const CacheLineStats base = trace_streaming(g, cfg);
  if (base.lines_fetched == 0) return 1.0;
  // Only positions matter, so the gapped layout is never materialized.
  const std::uint64_t stride = gapped_length(1, gap);
  std::vector<offset_t> scaled(g.offsets().begin(), g.offsets().end());
  for (auto& o : scaled) o *= stride;
  gapped_length(g.num_edges(), gap);
  const CacheLineStats gapped = stream_layout(scaled, stride, cfg);
  return static_cast<double>(gapped.lines_fetched) / static_cast<double>(base.lines_fetched);
}

double fetch_ratio_synthetic(std::uint64_t n, std::uint32_t gap, const CacheConfig& cfg) {
  const CacheLineStats base = trace_streaming_synthetic(n, 0, cfg);
  if (base.lines_fetched == 0) return 1.0;
  const CacheLineStats gapped = trace_streaming_synthetic(n, gap, cfg);
  return static_cast<double>(gapped.lines_fetched) / static_cast<double>(base.lines_fetched);
}

}  // namespace channelbench
