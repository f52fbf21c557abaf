#include <limits>
#include <string>

#include "channelbench/error.hpp"
#include "channelbench/gap.hpp"

namespace channelbench {

namespace {

void check_shape(const GappedCsr& gg) {
  const std::uint64_t stride = gg.stride();
  if (gg.offsets.size() != gg.base_nv + 1) {
    throw Error(Errc::invariant, "gapped csr: offsets length != nv + 1");
  }
  if (gg.offsets.front() != 0 || gg.offsets.back() != gg.adjacency.size()) {
    throw Error(Errc::invariant, "gapped csr: offsets do not span the adjacency");
  }
  if (gg.adjacency.size() != gg.base_ne * stride) {
    throw Error(Errc::invariant, "gapped csr: adjacency length != ne * (gap + 1)");
  }
  for (std::uint64_t v = 0; v < gg.base_nv; ++v) {
    if (gg.offsets[v] > gg.offsets[v + 1] || gg.offsets[v] % stride != 0) {
      throw Error(Errc::invariant,
                  "gapped csr: bad offset at vertex " + std::to_string(v));
    }
  }
}

}  // namespace

std::uint64_t gapped_length(std::uint64_t ne, std::uint32_t gap) {
  const std::uint64_t stride = std::uint64_t{gap} + 1;
  const std::uint64_t limit = std::numeric_limits<std::size_t>::max() / sizeof(vertex_t);
  if (ne != 0 && stride > limit / ne) {
    throw Error(Errc::overflow, "gapped adjacency of " + std::to_string(ne) + " x " +
                                    std::to_string(stride) + " entries exceeds addressable size");
  }
  return ne * stride;
}

GappedCsr insert_gaps(const Csr& g, std::uint32_t gap) {
  GappedCsr gg;
  gg.base_nv = g.num_vertices();
  gg.base_ne = g.num_edges();
  gg.gap = gap;
  const std::uint64_t stride = gg.stride();
  gg.adjacency.assign(gapped_length(g.num_edges(), gap), kGapSentinel);
  gg.offsets.resize(g.offsets().size());
  for (std::size_t i = 0; i < g.offsets().size(); ++i) gg.offsets[i] = g.offsets()[i] * stride;
  const auto adj = g.adjacency();
  for (std::size_t e = 0; e < adj.size(); ++e) gg.adjacency[e * stride] = adj[e];
  return gg;
}

Csr project_base(const GappedCsr& gg) {
  check_shape(gg);
  const std::uint64_t stride = gg.stride();
  std::vector<vertex_t> adjacency(gg.base_ne);
  for (std::uint64_t e = 0; e < gg.base_ne; ++e) {
    const vertex_t real = gg.adjacency[e * stride];
    if (real == kGapSentinel) {
      throw Error(Errc::invariant,
                  "gapped csr: real slot " + std::to_string(e * stride) + " holds the sentinel");
    }
    for (std::uint64_t k = 1; k < stride; ++k) {
      if (gg.adjacency[e * stride + k] != kGapSentinel) {
        throw Error(Errc::invariant, "gapped csr: dummy slot " + std::to_string(e * stride + k) +
                                         " holds a value");
      }
    }
    adjacency[e] = real;
  }
  std::vector<offset_t> offsets(gg.offsets.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) offsets[i] = gg.offsets[i] / stride;
  return Csr::from_parts(std::move(offsets), std::move(adjacency));
}

KernelResult pagerank_gapped(const GappedCsr& gg, const PageRankConfig& cfg) {
  check_shape(gg);
  return detail::run_pagerank(gg.view(), cfg, PullVariant::full);
}

KernelResult pagerank_gapped_streaming_only(const GappedCsr& gg, const PageRankConfig& cfg) {
  check_shape(gg);
  return detail::run_pagerank(gg.view(), cfg, PullVariant::streaming_only);
}

std::vector<TracedAccess> trace_pull_phase(const GappedCsr& gg, PullVariant variant) {
  check_shape(gg);
  return trace_pull_phase(gg.view(), variant);
}

}  // namespace channelbench
