#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lanmpc/crypto/block.hpp"

namespace lanmpc::garbling {

using crypto::Block;

// Tweakable correlation-robust hash from fixed-key AES:
//   K = rotl1(label) ^ tweak,  H(label, tweak) = AES_0(K) ^ K
// where AES_0 is AES-128 under the all-zero key and the tweak is zero-extended.
Block hash(const Block& label, std::uint64_t tweak);

// Element-wise hash(). Throws std::invalid_argument on length mismatch.
void hash_batch(std::span<const Block> labels, std::span<const std::uint64_t> tweaks, std::span<Block> out);
std::vector<Block> hash_batch(std::span<const Block> labels, std::span<const std::uint64_t> tweaks);

}  // namespace lanmpc::garbling
