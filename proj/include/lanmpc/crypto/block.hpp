#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>

namespace lanmpc::crypto {

// 128-bit value. Serialized as 16 little-endian bytes: lo first, then hi.
struct alignas(16) Block {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  constexpr Block() = default;
  constexpr Block(std::uint64_t hi_, std::uint64_t lo_) : lo(lo_), hi(hi_) {}

  constexpr bool lsb() const { return (lo & 1u) != 0; }

  constexpr Block& operator^=(const Block& o) {
    lo ^= o.lo;
    hi ^= o.hi;
    return *this;
  }
  friend constexpr Block operator^(Block a, const Block& b) { return a ^= b; }
  friend constexpr bool operator==(const Block&, const Block&) = default;

  // Rotate the 128-bit value left by one bit.
  constexpr Block rotl1() const { return Block((hi << 1) | (lo >> 63), (lo << 1) | (hi >> 63)); }

  static Block load(const std::byte* src) {
    Block b;
    std::memcpy(&b.lo, src, 8);
    std::memcpy(&b.hi, src + 8, 8);
    return b;
  }

  void store(std::byte* dst) const {
    std::memcpy(dst, &lo, 8);
    std::memcpy(dst + 8, &hi, 8);
  }

  std::string to_hex() const;
};

static_assert(sizeof(Block) == 16);
static_assert(std::endian::native == std::endian::little, "wire formats assume a little-endian host");

inline constexpr Block kZeroBlock{};

// Selects b when bit is set, zero otherwise, without branching.
constexpr Block select(bool bit, const Block& b) {
  const std::uint64_t mask = 0 - static_cast<std::uint64_t>(bit);
  return Block(b.hi & mask, b.lo & mask);
}

}  // namespace lanmpc::crypto
