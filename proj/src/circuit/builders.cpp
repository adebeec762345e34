#include "lanmpc/circuit/builders.hpp"

#include <limits>
#include <string>

#include "lanmpc/circuit/integer_ops.hpp"

namespace lanmpc::circuit {

CircuitRecorder::CircuitRecorder(std::uint64_t garbler_inputs, std::uint64_t evaluator_inputs) {
  if (garbler_inputs + evaluator_inputs > std::numeric_limits<WireId>::max()) {
    throw CircuitError("input count exceeds the wire id space");
  }
  garbler_count_ = static_cast<WireId>(garbler_inputs);
  evaluator_count_ = static_cast<WireId>(evaluator_inputs);
  next_ = garbler_inputs + evaluator_inputs;
}

CircuitRecorder::Wire CircuitRecorder::emit(GateKind kind, Wire a, Wire b) {
  if (next_ >= std::numeric_limits<WireId>::max()) throw CircuitError("circuit exceeds the wire id space");
  const auto out = static_cast<WireId>(next_++);
  gates_.push_back(Gate{kind, a, b, out});
  return out;
}

BooleanCircuit CircuitRecorder::finish(std::vector<WireId> outputs) && {
  return BooleanCircuit(static_cast<WireId>(next_), WireRange{0, garbler_count_},
                        WireRange{garbler_count_, evaluator_count_}, std::move(outputs), std::move(gates_));
}

void check_bitwidth(unsigned bitwidth) {
  if (bitwidth != 8 && bitwidth != 16 && bitwidth != 32 && bitwidth != 64) {
    throw CircuitError("unsupported bitwidth " + std::to_string(bitwidth) + " (expected 8, 16, 32 or 64)");
  }
}

namespace {

template <class Op>
BooleanCircuit binary_fragment(unsigned bitwidth, Op op) {
  check_bitwidth(bitwidth);
  CircuitRecorder rec(bitwidth, bitwidth);
  std::vector<Word<WireId>> a(1), b(1);
  for (unsigned i = 0; i < bitwidth; ++i) {
    a[0].push_back(rec.garbler_wire(i));
    b[0].push_back(rec.evaluator_wire(i));
  }
  auto out = op(rec, a, b);
  return std::move(rec).finish(std::move(out[0]));
}

}  // namespace

BooleanCircuit builder_add(unsigned bitwidth) {
  return binary_fragment(bitwidth, [](CircuitRecorder& rec, const auto& a, const auto& b) {
    return add_lanes(rec, std::span<const Word<WireId>>(a), std::span<const Word<WireId>>(b));
  });
}

BooleanCircuit builder_mul(unsigned bitwidth) {
  return binary_fragment(bitwidth, [](CircuitRecorder& rec, const auto& a, const auto& b) {
    return mul_lanes(rec, std::span<const Word<WireId>>(a), std::span<const Word<WireId>>(b));
  });
}

CircuitStats matvec_stats(std::uint64_t rows, std::uint64_t cols, unsigned bitwidth) {
  check_bitwidth(bitwidth);
  if (rows == 0 || cols == 0) throw CircuitError("matvec dimensions must be >= 1");
  // Rows are independent and identical in shape, so one row determines the rest.
  GateCounter counter;
  std::vector<Word<GateCounter::Wire>> row(cols, Word<GateCounter::Wire>(bitwidth, 0));
  std::vector<Word<GateCounter::Wire>> vec = row;
  matvec(counter, std::span<const Word<GateCounter::Wire>>(row), std::span<const Word<GateCounter::Wire>>(vec), 1, cols);
  CircuitStats s = counter.stats();
  s.and_count *= rows;
  s.xor_count *= rows;
  s.inv_count *= rows;
  return s;
}

BooleanCircuit build_matvec(std::uint64_t rows, std::uint64_t cols, unsigned bitwidth) {
  const CircuitStats s = matvec_stats(rows, cols, bitwidth);
  const std::uint64_t g_in = rows * cols * bitwidth;
  const std::uint64_t e_in = cols * bitwidth;
  if (g_in + e_in + s.and_count + s.xor_count + s.inv_count >= std::numeric_limits<WireId>::max()) {
    throw CircuitError("matvec " + std::to_string(rows) + "x" + std::to_string(cols) + "x" + std::to_string(bitwidth) +
                       " does not fit in 32-bit wire ids");
  }
  CircuitRecorder rec(g_in, e_in);
  std::vector<Word<WireId>> matrix(rows * cols), vec(cols);
  for (std::uint64_t k = 0; k < rows * cols; ++k) {
    for (unsigned i = 0; i < bitwidth; ++i) matrix[k].push_back(rec.garbler_wire(k * bitwidth + i));
  }
  for (std::uint64_t c = 0; c < cols; ++c) {
    for (unsigned i = 0; i < bitwidth; ++i) vec[c].push_back(rec.evaluator_wire(c * bitwidth + i));
  }
  auto out = matvec(rec, std::span<const Word<WireId>>(matrix), std::span<const Word<WireId>>(vec), rows, cols);
  std::vector<WireId> outputs;
  outputs.reserve(rows * bitwidth);
  for (auto& word : out) outputs.insert(outputs.end(), word.begin(), word.end());
  return std::move(rec).finish(std::move(outputs));
}

Bits words_to_bits(std::span<const std::uint64_t> words, unsigned bitwidth) {
  Bits out;
  out.reserve(words.size() * bitwidth);
  for (auto w : words) append_bits(out, w, bitwidth);
  return out;
}

std::vector<std::uint64_t> bits_to_words(std::span<const std::uint8_t> bits, unsigned bitwidth) {
  std::vector<std::uint64_t> out;
  out.reserve(bits.size() / bitwidth);
  for (std::size_t i = 0; i + bitwidth <= bits.size(); i += bitwidth) out.push_back(from_bits(bits.subspan(i, bitwidth)));
  return out;
}

std::uint64_t wrap(std::uint64_t value, unsigned bitwidth) {
  return bitwidth >= 64 ? value : value & ((std::uint64_t{1} << bitwidth) - 1);
}

}  // namespace lanmpc::circuit
