#include <atomic>
#include <chrono>
#include <string>

#include <omp.h>

#include "channelbench/error.hpp"
#include "channelbench/kernels.hpp"

namespace channelbench {

KernelResult bfs_top_down(const Csr& g, vertex_t source, std::uint32_t threads) {
  const std::uint64_t nv = g.num_vertices();
  if (source >= nv) {
    throw Error(Errc::range, "bfs source " + std::to_string(source) + " out of range (nv = " +
                                 std::to_string(nv) + ")");
  }
  if (threads == 0) throw Error(Errc::config, "threads must be positive");

  const auto start = std::chrono::steady_clock::now();
  std::vector<vertex_t> dist(nv, kUnreached);
  dist[source] = 0;
  std::vector<vertex_t> frontier{source};
  std::vector<std::vector<vertex_t>> local_next(threads);
  vertex_t depth = 0;

  while (!frontier.empty()) {
    const vertex_t next_depth = depth + 1;
    const auto chunks = static_cast<std::int64_t>(threads);
    const std::size_t fsize = frontier.size();
#pragma omp parallel for num_threads(threads) schedule(static, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      auto& out = local_next[c];
      out.clear();
      const std::size_t lo = fsize * c / threads;
      const std::size_t hi = fsize * (c + 1) / threads;
      for (std::size_t i = lo; i < hi; ++i) {
        for (vertex_t w : g.neighbors(frontier[i])) {
          std::atomic_ref<vertex_t> slot(dist[w]);
          vertex_t expected = kUnreached;
          if (slot.load(std::memory_order_relaxed) == kUnreached &&
              slot.compare_exchange_strong(expected, next_depth, std::memory_order_relaxed)) {
            out.push_back(w);
          }
        }
      }
    }
    frontier.clear();
    for (auto& part : local_next) frontier.insert(frontier.end(), part.begin(), part.end());
    depth = next_depth;
  }

  KernelResult result;
  result.timing.total_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
          .count());
  result.timing.threads = threads;
  result.checksum = checksum_distances(dist);
  result.distances = std::move(dist);
  return result;
}

}  // namespace channelbench
