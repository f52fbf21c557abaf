#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include <omp.h>

#include "channelbench/error.hpp"
#include "channelbench/fnv.hpp"
#include "channelbench/kernels.hpp"

namespace channelbench {

namespace {

struct NullTracer {
  void stream(ArrayTag, std::uint64_t) noexcept {}
  void random(ArrayTag, std::uint64_t) noexcept {}
};

struct RecordingTracer {
  std::vector<TracedAccess>* out;
  void stream(ArrayTag a, std::uint64_t i) { out->push_back({a, AccessKind::stream, i}); }
  void random(ArrayTag a, std::uint64_t i) { out->push_back({a, AccessKind::random, i}); }
};

// The pull phase. Each vertex sums contributions in ascending adjacency order,
// which is what makes the result independent of how vertices are split.
template <bool StreamingOnly, class Tracer>
void pull_vertices(const detail::AdjacencyView& g, const double* contrib, double* curr,
                   std::uint64_t& sink, std::uint64_t vbegin, std::uint64_t vend, Tracer& tracer) {
  const offset_t* offsets = g.offsets.data();
  const vertex_t* adjacency = g.adjacency.data();
  const std::uint64_t stride = g.stride;
  std::uint64_t local_sink = 0;
  for (std::uint64_t v = vbegin; v < vend; ++v) {
    double acc = 0.0;
    for (offset_t e = offsets[v]; e < offsets[v + 1]; e += stride) {
      // Streaming edge access.
      const vertex_t u = adjacency[e];
      tracer.stream(ArrayTag::adjacency, e);
      if constexpr (StreamingOnly) {
        local_sink += u;
      } else {
        // Random access.
        tracer.random(ArrayTag::contrib, u);
        acc += contrib[u];
      }
    }
    if constexpr (!StreamingOnly) curr[v] = acc;
  }
  sink += local_sink;
}

std::vector<std::uint64_t> partition(const detail::AdjacencyView& g, std::uint32_t parts,
                                     Schedule schedule) {
  const std::uint64_t nv = g.num_vertices();
  std::vector<std::uint64_t> bounds(parts + 1, nv);
  bounds[0] = 0;
  for (std::uint32_t p = 1; p < parts; ++p) {
    if (schedule == Schedule::static_blocks) {
      bounds[p] = nv * p / parts;
    } else {
      const offset_t target = g.offsets.back() / parts * p;
      const auto it = std::lower_bound(g.offsets.begin(), g.offsets.end() - 1, target);
      bounds[p] = std::max<std::uint64_t>(bounds[p - 1],
                                          static_cast<std::uint64_t>(it - g.offsets.begin()));
    }
  }
  return bounds;
}

std::uint64_t elapsed_since(std::chrono::steady_clock::time_point start) {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                        std::chrono::steady_clock::now() - start)
                                        .count());
}

template <bool StreamingOnly>
KernelResult run(const detail::AdjacencyView& g, const PageRankConfig& cfg) {
  const std::uint64_t nv = g.num_vertices();
  KernelResult result;
  result.timing.threads = cfg.threads;
  result.timing.iterations = cfg.iterations;
  result.timing.gap = static_cast<std::uint32_t>(g.stride - 1);
  if (nv == 0) {
    result.checksum = StreamingOnly ? checksum_scores({}, 0) : checksum_scores({});
    return result;
  }

  const auto start = std::chrono::steady_clock::now();
  const double n = static_cast<double>(nv);
  const double base = (1.0 - cfg.damping) / n;
  const double damping = cfg.damping;
  std::vector<double> prev(nv, 1.0 / n);
  std::vector<double> curr(nv, 0.0);
  std::vector<double> contrib(nv, 0.0);

  const auto bounds = partition(g, cfg.threads, cfg.schedule);
  const auto chunks = static_cast<std::int64_t>(cfg.threads);
  std::vector<std::uint64_t> sinks(cfg.threads, 0);
  NullTracer tracer;

  for (std::uint32_t iter = 0; iter < cfg.iterations; ++iter) {
    // One division per vertex.
#pragma omp parallel for num_threads(cfg.threads) schedule(static, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      for (std::uint64_t v = bounds[c]; v < bounds[c + 1]; ++v) {
        curr[v] = 0.0;
        const std::uint64_t deg = g.degree(v);
        contrib[v] = deg == 0 ? 0.0 : prev[v] / static_cast<double>(deg);
      }
    }

#pragma omp parallel for num_threads(cfg.threads) schedule(static, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      pull_vertices<StreamingOnly>(g, contrib.data(), curr.data(), sinks[c], bounds[c],
                                   bounds[c + 1], tracer);
    }

#pragma omp parallel for num_threads(cfg.threads) schedule(static, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      for (std::uint64_t v = bounds[c]; v < bounds[c + 1]; ++v) {
        curr[v] = base + damping * curr[v];
      }
    }
    std::swap(prev, curr);
  }

  result.timing.total_ns = elapsed_since(start);
  if constexpr (StreamingOnly) {
    result.timing.streaming_ns = result.timing.total_ns;
    for (std::uint64_t s : sinks) result.stream_sink += s;
    result.checksum = checksum_scores(prev, result.stream_sink);
  } else {
    result.checksum = checksum_scores(prev);
  }
  result.scores = std::move(prev);
  return result;
}

}  // namespace

void validate_pagerank_config(const PageRankConfig& cfg) {
  if (!(cfg.damping > 0.0 && cfg.damping < 1.0)) {
    throw Error(Errc::config, "damping must lie in (0, 1)");
  }
  if (cfg.iterations == 0) throw Error(Errc::config, "iterations must be positive");
  if (cfg.threads == 0) throw Error(Errc::config, "threads must be positive");
}

std::uint64_t checksum_scores(std::span<const double> scores) {
  Fnv1Hasher h;
  for (double s : scores) h.update_le(s);
  return h.digest();
}

std::uint64_t checksum_scores(std::span<const double> scores, std::uint64_t stream_sink) {
  Fnv1Hasher h;
  for (double s : scores) h.update_le(s);
  h.update_le(stream_sink);
  return h.digest();
}

std::uint64_t checksum_distances(std::span<const vertex_t> distances) {
  Fnv1Hasher h;
  for (vertex_t d : distances) h.update_le(d);
  return h.digest();
}

namespace detail {

KernelResult run_pagerank(const AdjacencyView& g, const PageRankConfig& cfg, PullVariant variant) {
  validate_pagerank_config(cfg);
  if (cfg.strict) {
    for (std::uint64_t v = 0; v < g.num_vertices(); ++v) {
      if (g.degree(v) == 0) {
        throw Error(Errc::zero_degree,
                    "vertex " + std::to_string(v) + " has degree 0 (strict mode)");
      }
    }
  }
  return variant == PullVariant::full ? run<false>(g, cfg) : run<true>(g, cfg);
}

}  // namespace detail

KernelResult pagerank(const Csr& g, const PageRankConfig& cfg) {
  return detail::run_pagerank(g.view(), cfg, PullVariant::full);
}

KernelResult pagerank_streaming_only(const Csr& g, const PageRankConfig& cfg) {
  return detail::run_pagerank(g.view(), cfg, PullVariant::streaming_only);
}

std::vector<TracedAccess> trace_pull_phase(const detail::AdjacencyView& g, PullVariant variant) {
  std::vector<TracedAccess> out;
  RecordingTracer tracer{&out};
  const std::uint64_t nv = g.num_vertices();
  std::vector<double> contrib(nv, 0.0);
  std::vector<double> curr(nv, 0.0);
  std::uint64_t sink = 0;
  if (variant == PullVariant::full) {
    pull_vertices<false>(g, contrib.data(), curr.data(), sink, 0, nv, tracer);
  } else {
    pull_vertices<true>(g, contrib.data(), curr.data(), sink, 0, nv, tracer);
  }
  return out;
}

}  // namespace channelbench
