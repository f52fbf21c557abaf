#pragma once

#include <cstdint>
#include <random>

#include "channelbench/graph.hpp"

namespace channelbench::testing {

// Uniform random edge list over `nv` ids; self-loops and duplicates allowed.
inline EdgeList random_edge_list(std::uint64_t nv, std::uint64_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(nv - 1));
  EdgeList el;
  el.nv_hint = nv;
  for (std::uint64_t i = 0; i < m; ++i) el.edges.push_back({pick(rng), pick(rng)});
  return el;
}

// Random graph through the full cleanup pipeline; falls back to a single edge
// if everything was filtered out.
inline Csr random_csr(std::uint64_t nv, std::uint64_t m, std::uint64_t seed) {
  EdgeList el = random_edge_list(nv, m, seed);
  el.edges.push_back({0, static_cast<vertex_t>(nv > 1 ? 1 : 0)});
  if (nv < 2) el = EdgeList{{{0, 1}}, 2};
  return build_csr(preprocess(el));
}

inline Csr path_graph(std::uint32_t n) {
  EdgeList el;
  el.nv_hint = n;
  for (std::uint32_t i = 0; i + 1 < n; ++i) el.edges.push_back({i, i + 1});
  return build_csr(preprocess(el));
}

}  // namespace channelbench::testing
