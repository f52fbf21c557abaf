#pragma once

#include <cstdint>
#include <span>

namespace channelbench {

using vertex_t = std::uint32_t;
using offset_t = std::uint64_t;

namespace detail {

// Read-only window over CSR-shaped storage. `stride` is 1 for a plain CSR and
// gap + 1 for a gapped one; real neighbors live at offsets[v] + k * stride.
struct AdjacencyView {
  std::span<const offset_t> offsets;
  std::span<const vertex_t> adjacency;
  std::uint64_t stride = 1;

  std::uint64_t num_vertices() const noexcept {
    return offsets.empty() ? 0 : offsets.size() - 1;
  }
  std::uint64_t degree(std::uint64_t v) const noexcept {
    return (offsets[v + 1] - offsets[v]) / stride;
  }
};

}  // namespace detail
}  // namespace channelbench
