#include <gtest/gtest.h>
#include <openssl/evp.h>

#include <random>
#include <set>

#include "lanmpc/garbling/hash.hpp"

using lanmpc::crypto::Block;
using namespace lanmpc::garbling;

namespace {

// AES-128 under the all-zero key, via OpenSSL.
Block openssl_aes_zero_key(const Block& in) {
  static const unsigned char key[16] = {};
  unsigned char src[16], dst[32];
  in.store(reinterpret_cast<std::byte*>(src));
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  int len = 0;
  EVP_EncryptInit_ex(ctx, EVP_aes_128_ecb(), nullptr, key, nullptr);
  EVP_CIPHER_CTX_set_padding(ctx, 0);
  EVP_EncryptUpdate(ctx, dst, &len, src, 16);
  EVP_CIPHER_CTX_free(ctx);
  return Block::load(reinterpret_cast<const std::byte*>(dst));
}

// H(X, i) computed from scratch: 128-bit rotate on the integer value, then AES.
Block reference_hash(const Block& x, std::uint64_t tweak) {
  const unsigned __int128 v = (static_cast<unsigned __int128>(x.hi) << 64) | x.lo;
  const unsigned __int128 k = ((v << 1) | (v >> 127)) ^ tweak;
  const Block kb(static_cast<std::uint64_t>(k >> 64), static_cast<std::uint64_t>(k));
  return openssl_aes_zero_key(kb) ^ kb;
}

Block random_block(std::mt19937_64& rng) { return Block(rng(), rng()); }

}  // namespace

TEST(Hash, ZeroInputIsPublishedAesVector) {
  // AES-128, zero key, zero plaintext: 66e94bd4ef8a2c3b884cfa59ca342b2e.
  const Block h = hash(Block{}, 0);
  std::byte out[16];
  h.store(out);
  const unsigned char expected[16] = {0x66, 0xe9, 0x4b, 0xd4, 0xef, 0x8a, 0x2c, 0x3b,
                                      0x88, 0x4c, 0xfa, 0x59, 0xca, 0x34, 0x2b, 0x2e};
  EXPECT_EQ(std::memcmp(out, expected, 16), 0);
  EXPECT_EQ(h, openssl_aes_zero_key(Block{}));
}

TEST(Hash, MatchesOpenSslReference) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const Block x = random_block(rng);
    const std::uint64_t t = i % 2 ? rng() : static_cast<std::uint64_t>(i);
    ASSERT_EQ(hash(x, t), reference_hash(x, t)) << i;
  }
}

TEST(Hash, FrozenVector) {
  // From tests/oracles/half_gates.py.
  const Block x(0x0011223344556677ULL, 0x8899aabbccddeeffULL);
  EXPECT_EQ(hash(x, 5), Block(0x1750ecd79f9e5cd2ULL, 0xeaf50b3dcb1d364aULL));
}

TEST(Hash, DeterministicAndTweakSensitive) {
  std::mt19937_64 rng(2);
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (int i = 0; i < 10000; ++i) {
    const Block x = random_block(rng);
    const std::uint64_t t = rng() >> 1;
    const Block h = hash(x, t);
    ASSERT_EQ(h, hash(x, t));
    ASSERT_NE(h, hash(x, t + 1));
    seen.insert({h.hi, h.lo});
  }
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Hash, BatchEqualsScalar) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 255u, 256u, 257u, 1000u}) {
    std::vector<Block> xs(n);
    std::vector<std::uint64_t> ts(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = random_block(rng);
      ts[i] = rng();
    }
    const auto out = hash_batch(xs, ts);
    ASSERT_EQ(out.size(), n);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(out[i], hash(xs[i], ts[i])) << n << " " << i;
  }
}

TEST(Hash, BatchRejectsLengthMismatch) {
  std::vector<Block> xs(3);
  std::vector<std::uint64_t> ts(2);
  EXPECT_THROW(hash_batch(xs, ts), std::invalid_argument);
  std::vector<Block> out(2);
  EXPECT_THROW(hash_batch(xs, std::vector<std::uint64_t>(3), out), std::invalid_argument);
}
