#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

#include "lanmpc/garbling/hash.hpp"

namespace lanmpc::garbling {

// The two ciphertexts sent for one AND gate: generator half, then evaluator half.
struct GarbledAndTable {
  Block gen;
  Block eval;

  static constexpr std::size_t kBytes = 32;

  void store(std::byte* dst) const {
    gen.store(dst);
    eval.store(dst + 16);
  }
  static GarbledAndTable load(const std::byte* src) { return {Block::load(src), Block::load(src + 16)}; }

  friend bool operator==(const GarbledAndTable&, const GarbledAndTable&) = default;
};

// Free-XOR: no ciphertexts, no hashing.
inline Block garble_xor(const Block& a0, const Block& b0) { return a0 ^ b0; }
inline Block eval_xor(const Block& a, const Block& b) { return a ^ b; }

// Half-gates AND with tweaks 2*gate_index (generator half) and
// 2*gate_index+1 (evaluator half). Requires lsb(delta) = 1.
// Returns the table and the output's false label.
std::pair<GarbledAndTable, Block> garble_and(const Block& a0, const Block& b0, const Block& delta,
                                             std::uint64_t gate_index);

Block eval_and(const Block& a, const Block& b, const GarbledAndTable& table, std::uint64_t gate_index);

// Batched forms for n independent gates with consecutive indices starting at
// first_index. Tables are written as n*32 contiguous bytes.
void garble_and_batch(std::span<const Block> a0, std::span<const Block> b0, const Block& delta,
                      std::uint64_t first_index, std::span<std::byte> tables_out, std::span<Block> c0_out);

void eval_and_batch(std::span<const Block> a, std::span<const Block> b, std::span<const std::byte> tables,
                    std::uint64_t first_index, std::span<Block> c_out);

}  // namespace lanmpc::garbling
