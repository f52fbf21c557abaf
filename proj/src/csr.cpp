#include <algorithm>
#include <limits>
#include <string>

#include "channelbench/error.hpp"
#include "channelbench/graph.hpp"

namespace channelbench {

namespace {

[[noreturn]] void invariant_error(const std::string& what) {
  throw Error(Errc::invariant, "csr: " + what);
}

}  // namespace

void validate_csr(std::span<const offset_t> offsets, std::span<const vertex_t> adjacency) {
  if (offsets.empty()) invariant_error("offsets array is empty");
  if (offsets.front() != 0) invariant_error("offsets[0] != 0");
  const std::uint64_t nv = offsets.size() - 1;
  // The all-ones id is reserved as the gap sentinel.
  if (nv > std::numeric_limits<vertex_t>::max()) invariant_error("vertex count exceeds 32-bit ids");
  if (offsets.back() != adjacency.size()) {
    invariant_error("offsets[nv] = " + std::to_string(offsets.back()) + " but ne = " +
                    std::to_string(adjacency.size()));
  }
  for (std::uint64_t v = 0; v < nv; ++v) {
    if (offsets[v] > offsets[v + 1]) {
      invariant_error("offsets decrease at vertex " + std::to_string(v));
    }
  }
  for (std::uint64_t v = 0; v < nv; ++v) {
    const auto begin = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
    const auto end = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
    for (auto it = begin; it != end; ++it) {
      if (*it >= nv) invariant_error("neighbor id out of range at vertex " + std::to_string(v));
      if (*it == v) invariant_error("self-loop at vertex " + std::to_string(v));
      if (it != begin && *(it - 1) >= *it) {
        invariant_error("neighbors of vertex " + std::to_string(v) +
                        " not strictly ascending (duplicate or unsorted)");
      }
    }
  }
  for (std::uint64_t v = 0; v < nv; ++v) {
    for (offset_t e = offsets[v]; e < offsets[v + 1]; ++e) {
      const vertex_t u = adjacency[e];
      const auto ub = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[u]);
      const auto ue = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]);
      if (!std::binary_search(ub, ue, static_cast<vertex_t>(v))) {
        invariant_error("edge (" + std::to_string(v) + "," + std::to_string(u) +
                        ") has no reverse");
      }
    }
  }
}

Csr Csr::from_parts(std::vector<offset_t> offsets, std::vector<vertex_t> adjacency) {
  validate_csr(offsets, adjacency);
  Csr g;
  g.offsets_ = std::move(offsets);
  g.adjacency_ = std::move(adjacency);
  return g;
}

std::uint64_t Csr::min_degree() const noexcept {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t v = 0; v < num_vertices(); ++v) {
    best = std::min<std::uint64_t>(best, offsets_[v + 1] - offsets_[v]);
  }
  return num_vertices() == 0 ? 0 : best;
}

Csr build_csr(const EdgeList& el) {
  const std::uint64_t nv = el.nv_hint;
  if (nv > std::numeric_limits<vertex_t>::max()) {
    throw Error(Errc::overflow, "build_csr: vertex count exceeds 32-bit ids");
  }
  std::vector<offset_t> offsets(nv + 1, 0);
  for (const Edge& e : el.edges) {
    if (e.u >= nv || e.v >= nv) {
      throw Error(Errc::range, "build_csr: edge (" + std::to_string(e.u) + "," +
                                   std::to_string(e.v) + ") outside nv_hint " + std::to_string(nv));
    }
    ++offsets[e.u + 1];
  }
  for (std::uint64_t v = 0; v < nv; ++v) offsets[v + 1] += offsets[v];

  std::vector<vertex_t> adjacency(el.edges.size());
  std::vector<offset_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : el.edges) adjacency[cursor[e.u]++] = e.v;
  for (std::uint64_t v = 0; v < nv; ++v) {
    std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
  }
  return Csr::from_parts(std::move(offsets), std::move(adjacency));
}

}  // namespace channelbench
