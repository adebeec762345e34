#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "lanmpc/crypto/aes.hpp"

namespace lanmpc::crypto {

// AES-CTR pseudorandom generator. Output is a pure function of the seed.
class Prg {
 public:
  explicit Prg(std::uint64_t seed);
  Prg(const Prg&) = delete;
  Prg& operator=(const Prg&) = delete;

  Block next_block();
  std::uint64_t next_u64();
  void fill(std::span<Block> out);

 private:
  void refill();

  static constexpr std::size_t kBufferBlocks = 8;

  Aes128 cipher_;
  std::uint64_t counter_ = 0;
  std::array<Block, kBufferBlocks> buffer_{};
  std::size_t used_blocks_ = kBufferBlocks;
  // Holds the upper half of a block split by next_u64.
  std::uint64_t spare_word_ = 0;
  bool has_spare_word_ = false;
};

}  // namespace lanmpc::crypto
