#include "lanmpc/crypto/prg.hpp"

namespace lanmpc::crypto {

namespace {
// Domain-separates PRG keys from other uses of a raw seed.
constexpr std::uint64_t kPrgDomain = 0x6c616e6d70632d70ULL;
}  // namespace

Prg::Prg(std::uint64_t seed) : cipher_(Block(kPrgDomain, seed)) {}

void Prg::refill() {
  for (auto& b : buffer_) b = Block(0, counter_++);
  cipher_.encrypt_blocks(buffer_);
  used_blocks_ = 0;
}

Block Prg::next_block() {
  if (used_blocks_ == kBufferBlocks) refill();
  return buffer_[used_blocks_++];
}

std::uint64_t Prg::next_u64() {
  if (has_spare_word_) {
    has_spare_word_ = false;
    return spare_word_;
  }
  const Block b = next_block();
  spare_word_ = b.hi;
  has_spare_word_ = true;
  return b.lo;
}

void Prg::fill(std::span<Block> out) {
  for (auto& b : out) b = next_block();
}

}  // namespace lanmpc::crypto
