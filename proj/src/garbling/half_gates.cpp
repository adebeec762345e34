#include "lanmpc/garbling/half_gates.hpp"

#include <algorithm>

namespace lanmpc::garbling {

using crypto::select;

std::pair<GarbledAndTable, Block> garble_and(const Block& a0, const Block& b0, const Block& delta,
                                             std::uint64_t gate_index) {
  const std::uint64_t j = 2 * gate_index;
  const std::uint64_t j1 = j + 1;
  const bool pa = a0.lsb();
  const bool pb = b0.lsb();

  const Block ha0 = hash(a0, j);
  const Block ha1 = hash(a0 ^ delta, j);
  const Block hb0 = hash(b0, j1);
  const Block hb1 = hash(b0 ^ delta, j1);

  const Block tg = ha0 ^ ha1 ^ select(pb, delta);
  const Block wg = ha0 ^ select(pa, tg);
  const Block te = hb0 ^ hb1 ^ a0;
  const Block we = hb0 ^ select(pb, te ^ a0);
  return {GarbledAndTable{tg, te}, wg ^ we};
}

Block eval_and(const Block& a, const Block& b, const GarbledAndTable& table, std::uint64_t gate_index) {
  const std::uint64_t j = 2 * gate_index;
  return hash(a, j) ^ select(a.lsb(), table.gen) ^ hash(b, j + 1) ^ select(b.lsb(), table.eval ^ a);
}

namespace {
constexpr std::size_t kBatchGates = 256;
}  // namespace

void garble_and_batch(std::span<const Block> a0, std::span<const Block> b0, const Block& delta,
                      std::uint64_t first_index, std::span<std::byte> tables_out, std::span<Block> c0_out) {
  Block keys[4 * kBatchGates];
  std::uint64_t tweaks[4 * kBatchGates];
  Block hashed[4 * kBatchGates];
  for (std::size_t base = 0; base < a0.size(); base += kBatchGates) {
    const std::size_t n = std::min(kBatchGates, a0.size() - base);
    for (std::size_t g = 0; g < n; ++g) {
      const std::uint64_t j = 2 * (first_index + base + g);
      keys[4 * g] = a0[base + g];
      keys[4 * g + 1] = a0[base + g] ^ delta;
      keys[4 * g + 2] = b0[base + g];
      keys[4 * g + 3] = b0[base + g] ^ delta;
      tweaks[4 * g] = j;
      tweaks[4 * g + 1] = j;
      tweaks[4 * g + 2] = j + 1;
      tweaks[4 * g + 3] = j + 1;
    }
    hash_batch(std::span<const Block>(keys, 4 * n), std::span<const std::uint64_t>(tweaks, 4 * n),
               std::span<Block>(hashed, 4 * n));
    for (std::size_t g = 0; g < n; ++g) {
      const Block& a = a0[base + g];
      const bool pa = a.lsb();
      const bool pb = b0[base + g].lsb();
      const Block tg = hashed[4 * g] ^ hashed[4 * g + 1] ^ select(pb, delta);
      const Block wg = hashed[4 * g] ^ select(pa, tg);
      const Block te = hashed[4 * g + 2] ^ hashed[4 * g + 3] ^ a;
      const Block we = hashed[4 * g + 2] ^ select(pb, te ^ a);
      GarbledAndTable{tg, te}.store(tables_out.data() + (base + g) * GarbledAndTable::kBytes);
      c0_out[base + g] = wg ^ we;
    }
  }
}

void eval_and_batch(std::span<const Block> a, std::span<const Block> b, std::span<const std::byte> tables,
                    std::uint64_t first_index, std::span<Block> c_out) {
  Block keys[2 * kBatchGates];
  std::uint64_t tweaks[2 * kBatchGates];
  Block hashed[2 * kBatchGates];
  for (std::size_t base = 0; base < a.size(); base += kBatchGates) {
    const std::size_t n = std::min(kBatchGates, a.size() - base);
    for (std::size_t g = 0; g < n; ++g) {
      const std::uint64_t j = 2 * (first_index + base + g);
      keys[2 * g] = a[base + g];
      keys[2 * g + 1] = b[base + g];
      tweaks[2 * g] = j;
      tweaks[2 * g + 1] = j + 1;
    }
    hash_batch(std::span<const Block>(keys, 2 * n), std::span<const std::uint64_t>(tweaks, 2 * n),
               std::span<Block>(hashed, 2 * n));
    for (std::size_t g = 0; g < n; ++g) {
      const auto t = GarbledAndTable::load(tables.data() + (base + g) * GarbledAndTable::kBytes);
      const Block& ag = a[base + g];
      c_out[base + g] = hashed[2 * g] ^ select(ag.lsb(), t.gen) ^ hashed[2 * g + 1] ^ select(b[base + g].lsb(), t.eval ^ ag);
    }
  }
}

}  // namespace lanmpc::garbling
