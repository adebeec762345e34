#include "lanmpc/crypto/aes.hpp"

#include <wmmintrin.h>
#include <emmintrin.h>

#include <cstdio>

namespace lanmpc::crypto {

namespace {

inline __m128i to_m128(const Block& b) { return _mm_load_si128(reinterpret_cast<const __m128i*>(&b)); }

inline void from_m128(__m128i v, Block& b) { _mm_store_si128(reinterpret_cast<__m128i*>(&b), v); }

template <int Rcon>
inline __m128i expand_step(__m128i key) {
  __m128i assist = _mm_aeskeygenassist_si128(key, Rcon);
  assist = _mm_shuffle_epi32(assist, 0xff);
  key = _mm_xor_si128(key, _mm_slli_si128(key, 4));
  key = _mm_xor_si128(key, _mm_slli_si128(key, 4));
  key = _mm_xor_si128(key, _mm_slli_si128(key, 4));
  return _mm_xor_si128(key, assist);
}

}  // namespace

std::string Block::to_hex() const {
  std::byte bytes[16];
  store(bytes);
  std::string out;
  out.reserve(32);
  char buf[3];
  for (std::byte b : bytes) {
    std::snprintf(buf, sizeof(buf), "%02x", static_cast<unsigned>(b));
    out += buf;
  }
  return out;
}

Aes128::Aes128(const Block& key) {
  __m128i k[11];
  k[0] = to_m128(key);
  k[1] = expand_step<0x01>(k[0]);
  k[2] = expand_step<0x02>(k[1]);
  k[3] = expand_step<0x04>(k[2]);
  k[4] = expand_step<0x08>(k[3]);
  k[5] = expand_step<0x10>(k[4]);
  k[6] = expand_step<0x20>(k[5]);
  k[7] = expand_step<0x40>(k[6]);
  k[8] = expand_step<0x80>(k[7]);
  k[9] = expand_step<0x1b>(k[8]);
  k[10] = expand_step<0x36>(k[9]);
  for (int i = 0; i < 11; ++i) from_m128(k[i], round_keys_[i]);
}

Block Aes128::encrypt(const Block& in) const {
  __m128i s = _mm_xor_si128(to_m128(in), to_m128(round_keys_[0]));
  for (int r = 1; r < 10; ++r) s = _mm_aesenc_si128(s, to_m128(round_keys_[r]));
  s = _mm_aesenclast_si128(s, to_m128(round_keys_[10]));
  Block out;
  from_m128(s, out);
  return out;
}

void Aes128::encrypt_blocks(std::span<Block> blocks) const {
  __m128i rk[11];
  for (int i = 0; i < 11; ++i) rk[i] = to_m128(round_keys_[i]);

  constexpr std::size_t kLanes = 8;
  std::size_t i = 0;
  for (; i + kLanes <= blocks.size(); i += kLanes) {
    __m128i s[kLanes];
    for (std::size_t l = 0; l < kLanes; ++l) s[l] = _mm_xor_si128(to_m128(blocks[i + l]), rk[0]);
    for (int r = 1; r < 10; ++r) {
      for (std::size_t l = 0; l < kLanes; ++l) s[l] = _mm_aesenc_si128(s[l], rk[r]);
    }
    for (std::size_t l = 0; l < kLanes; ++l) from_m128(_mm_aesenclast_si128(s[l], rk[10]), blocks[i + l]);
  }
  for (; i < blocks.size(); ++i) {
    __m128i s = _mm_xor_si128(to_m128(blocks[i]), rk[0]);
    for (int r = 1; r < 10; ++r) s = _mm_aesenc_si128(s, rk[r]);
    from_m128(_mm_aesenclast_si128(s, rk[10]), blocks[i]);
  }
}

const Aes128& fixed_key_aes() {
  static const Aes128 instance{kZeroBlock};
  return instance;
}

}  // namespace lanmpc::crypto
