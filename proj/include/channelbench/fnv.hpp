#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace channelbench {

inline constexpr std::uint64_t kFnv64OffsetBasis = 14695981039346656037ULL;
inline constexpr std::uint64_t kFnv64Prime = 1099511628211ULL;

/// Incremental 64-bit FNV-1 (multiply, then xor).
class Fnv1Hasher {
 public:
  constexpr void update(std::uint8_t byte) noexcept {
    state_ *= kFnv64Prime;
    state_ ^= byte;
  }

  constexpr void update(std::span<const std::uint8_t> bytes) noexcept {
    for (std::uint8_t b : bytes) update(b);
  }

  void update(std::span<const std::byte> bytes) noexcept {
    for (std::byte b : bytes) update(static_cast<std::uint8_t>(b));
  }

  // Little-endian byte image of an unsigned integer, independent of host order.
  template <class UInt>
  constexpr void update_le(UInt value) noexcept {
    for (std::size_t i = 0; i < sizeof(UInt); ++i) {
      update(static_cast<std::uint8_t>(value >> (8 * i)));
    }
  }

  void update_le(double value) noexcept { update_le(std::bit_cast<std::uint64_t>(value)); }

  constexpr std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = kFnv64OffsetBasis;
};

constexpr std::uint64_t fnv1_64(std::span<const std::uint8_t> bytes) noexcept {
  Fnv1Hasher h;
  h.update(bytes);
  return h.digest();
}

inline std::uint64_t fnv1_64(std::string_view text) noexcept {
  Fnv1Hasher h;
  for (char c : text) h.update(static_cast<std::uint8_t>(c));
  return h.digest();
}

/// Hash of the 8 little-endian bytes of `value`; drives the random benchmark
/// index stream.
constexpr std::uint64_t fnv1_64_u64(std::uint64_t value) noexcept {
  Fnv1Hasher h;
  h.update_le(value);
  return h.digest();
}

}  // namespace channelbench
