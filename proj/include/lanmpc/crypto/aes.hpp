#pragma once

#include <array>
#include <span>

#include "lanmpc/crypto/block.hpp"

namespace lanmpc::crypto {

// AES-128 block encryption backed by AES-NI.
class Aes128 {
 public:
  explicit Aes128(const Block& key);

  Block encrypt(const Block& in) const;

  // In-place ECB encryption of every block, eight blocks in flight at a time.
  void encrypt_blocks(std::span<Block> blocks) const;

 private:
  std::array<Block, 11> round_keys_;
};

// The AES-128 instance under the all-zero key.
const Aes128& fixed_key_aes();

}  // namespace lanmpc::crypto
