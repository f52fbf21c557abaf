#include <algorithm>
#include <numeric>
#include <string>

#include "channelbench/error.hpp"
#include "channelbench/graph.hpp"
#include "channelbench/rng.hpp"

namespace channelbench {

EdgeList preprocess(const EdgeList& el, const PreprocessOptions& opts) {
  for (const Edge& e : el.edges) {
    if (e.u >= el.nv_hint || e.v >= el.nv_hint) {
      throw Error(Errc::range, "preprocess: edge (" + std::to_string(e.u) + "," +
                                   std::to_string(e.v) + ") outside nv_hint " +
                                   std::to_string(el.nv_hint));
    }
  }

  std::vector<Edge> edges = el.edges;
  if (opts.drop_self_loops) {
    std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  }
  if (opts.symmetrize) {
    const std::size_t n = edges.size();
    edges.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (edges[i].u != edges[i].v) edges.push_back({edges[i].v, edges[i].u});
    }
  }
  std::sort(edges.begin(), edges.end());
  if (opts.dedup) {
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  EdgeList out;
  out.nv_hint = el.nv_hint;
  if (opts.drop_singletons) {
    std::vector<std::uint8_t> touched(el.nv_hint, 0);
    for (const Edge& e : edges) touched[e.u] = touched[e.v] = 1;
    std::vector<vertex_t> remap(el.nv_hint, 0);
    vertex_t next = 0;
    for (std::uint64_t v = 0; v < el.nv_hint; ++v) {
      if (touched[v]) remap[v] = next++;
    }
    // Monotone relabeling keeps the (u, v) order intact.
    for (Edge& e : edges) e = {remap[e.u], remap[e.v]};
    out.nv_hint = next;
  }
  out.edges = std::move(edges);

  if (out.edges.empty()) throw Error(Errc::empty_graph, "graph is empty after preprocessing");
  if (opts.randomize_seed) return randomize_ids(out, *opts.randomize_seed);
  return out;
}

std::vector<vertex_t> random_permutation(std::uint64_t n, std::uint64_t seed) {
  std::vector<vertex_t> perm(n);
  std::iota(perm.begin(), perm.end(), vertex_t{0});
  Xoshiro256StarStar rng(seed);
  for (std::uint64_t i = n; i > 1; --i) {
    const std::uint64_t j = rng.bounded(i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

EdgeList randomize_ids(const EdgeList& el, std::uint64_t seed) {
  const auto perm = random_permutation(el.nv_hint, seed);
  EdgeList out;
  out.nv_hint = el.nv_hint;
  out.edges.reserve(el.edges.size());
  for (const Edge& e : el.edges) out.edges.push_back({perm.at(e.u), perm.at(e.v)});
  return out;
}

}  // namespace channelbench
