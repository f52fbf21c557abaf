#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "channelbench/detail/adjacency_view.hpp"

namespace channelbench {

struct Edge {
  vertex_t u = 0;
  vertex_t v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Raw edges as parsed, before any cleanup. Every id is below `nv_hint`.
struct EdgeList {
  std::vector<Edge> edges;
  std::uint64_t nv_hint = 0;

  friend bool operator==(const EdgeList&, const EdgeList&) = default;
};

struct PreprocessOptions {
  bool symmetrize = true;
  bool drop_self_loops = true;
  bool dedup = true;
  bool drop_singletons = true;
  std::optional<std::uint64_t> randomize_seed;
};

/// Compressed sparse row graph. Instances are always valid: offsets start at
/// zero and end at ne, each neighbor slice is strictly ascending, there are no
/// self-loops, and every edge has its reverse.
class Csr {
 public:
  Csr() : offsets_{0} {}

  /// Takes ownership of the arrays after checking every invariant.
  static Csr from_parts(std::vector<offset_t> offsets, std::vector<vertex_t> adjacency);

  std::uint64_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::uint64_t num_edges() const noexcept { return adjacency_.size(); }

  std::uint64_t degree(vertex_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  std::span<const offset_t> offsets() const noexcept { return offsets_; }
  std::span<const vertex_t> adjacency() const noexcept { return adjacency_; }

  std::uint64_t min_degree() const noexcept;

  detail::AdjacencyView view() const noexcept { return {offsets_, adjacency_, 1}; }

  friend bool operator==(const Csr&, const Csr&) = default;

 private:
  std::vector<offset_t> offsets_;
  std::vector<vertex_t> adjacency_;
};

/// Throws Error{invariant} describing the first violated CSR invariant.
void validate_csr(std::span<const offset_t> offsets, std::span<const vertex_t> adjacency);

// Text loaders. Both throw Error{io} when the file cannot be opened and
// Error{parse} (with a 1-based line number) on malformed content.
EdgeList load_edge_list(const std::filesystem::path& path);
EdgeList load_matrix_market(const std::filesystem::path& path);

EdgeList parse_edge_list(std::string_view text);
EdgeList parse_matrix_market(std::string_view text);

/// Cleanup pipeline: drop self-loops, symmetrize, dedup, drop singletons
/// (compacting ids in their original relative order), then optionally
/// relabel with a seeded random permutation. Output is sorted by (u, v)
/// unless relabeling is requested.
EdgeList preprocess(const EdgeList& el, const PreprocessOptions& opts = {});

/// Fisher-Yates permutation of 0..n-1 drawn from xoshiro256** seeded through
/// SplitMix64. perm[old_id] = new_id.
std::vector<vertex_t> random_permutation(std::uint64_t n, std::uint64_t seed);

EdgeList randomize_ids(const EdgeList& el, std::uint64_t seed);

/// Builds CSR from a symmetric, self-loop-free, duplicate-free edge list.
Csr build_csr(const EdgeList& el);

// Binary CSR container ("CBCS", version 1, little-endian).
void write_csr_binary(const Csr& g, const std::filesystem::path& path);
Csr read_csr_binary(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_csr_binary(const Csr& g);
Csr decode_csr_binary(std::span<const std::uint8_t> bytes);

}  // namespace channelbench
