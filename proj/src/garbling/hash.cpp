#include "lanmpc/garbling/hash.hpp"

#include <stdexcept>

#include "lanmpc/crypto/aes.hpp"

namespace lanmpc::garbling {

Block hash(const Block& label, std::uint64_t tweak) {
  Block k = label.rotl1();
  k.lo ^= tweak;
  return crypto::fixed_key_aes().encrypt(k) ^ k;
}

void hash_batch(std::span<const Block> labels, std::span<const std::uint64_t> tweaks, std::span<Block> out) {
  if (labels.size() != tweaks.size() || labels.size() != out.size()) {
    throw std::invalid_argument("hash_batch: labels, tweaks and output must have equal length");
  }
  constexpr std::size_t kChunk = 256;
  Block keys[kChunk];
  const auto& aes = crypto::fixed_key_aes();
  for (std::size_t base = 0; base < labels.size(); base += kChunk) {
    const std::size_t n = std::min(kChunk, labels.size() - base);
    for (std::size_t i = 0; i < n; ++i) {
      keys[i] = labels[base + i].rotl1();
      keys[i].lo ^= tweaks[base + i];
      out[base + i] = keys[i];
    }
    aes.encrypt_blocks(out.subspan(base, n));
    for (std::size_t i = 0; i < n; ++i) out[base + i] ^= keys[i];
  }
}

std::vector<Block> hash_batch(std::span<const Block> labels, std::span<const std::uint64_t> tweaks) {
  std::vector<Block> out(labels.size());
  hash_batch(labels, tweaks, out);
  return out;
}

}  // namespace lanmpc::garbling
