#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace lanmpc::circuit {

using WireId = std::uint32_t;

// One plaintext bit per element, each 0 or 1.
using Bits = std::vector<std::uint8_t>;

class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GateKind : std::uint8_t { kXor, kAnd, kInv };

struct Gate {
  GateKind kind;
  WireId in0;
  WireId in1;  // unused for kInv
  WireId out;

  friend bool operator==(const Gate&, const Gate&) = default;
};

struct WireRange {
  WireId begin = 0;
  WireId count = 0;

  WireId end() const { return begin + count; }
  bool contains(WireId w) const { return w >= begin && w - begin < count; }
};

struct CircuitStats {
  std::uint64_t and_count = 0;
  std::uint64_t xor_count = 0;
  std::uint64_t inv_count = 0;
  std::uint64_t and_depth = 0;

  friend bool operator==(const CircuitStats&, const CircuitStats&) = default;
};

// Immutable boolean circuit over XOR/AND/INV gates in topological order.
// Construction validates: input ranges disjoint and in bounds, each gate reads
// only defined wires, no wire is written twice, every output is defined.
class BooleanCircuit {
 public:
  BooleanCircuit(WireId wire_count, WireRange garbler_inputs, WireRange evaluator_inputs,
                 std::vector<WireId> outputs, std::vector<Gate> gates);

  WireId wire_count() const { return wire_count_; }
  WireRange garbler_inputs() const { return garbler_inputs_; }
  WireRange evaluator_inputs() const { return evaluator_inputs_; }
  std::span<const WireId> outputs() const { return outputs_; }
  std::span<const Gate> gates() const { return gates_; }

 private:
  WireId wire_count_;
  WireRange garbler_inputs_;
  WireRange evaluator_inputs_;
  std::vector<WireId> outputs_;
  std::vector<Gate> gates_;
};

CircuitStats stats(const BooleanCircuit& circuit);

// Reference gate-by-gate evaluation. Throws CircuitError on input length mismatch.
Bits eval_plaintext(const BooleanCircuit& circuit, std::span<const std::uint8_t> garbler_bits,
                    std::span<const std::uint8_t> evaluator_bits);

// Little-endian bit decomposition of the low `width` bits of value.
Bits to_bits(std::uint64_t value, unsigned width);
void append_bits(Bits& out, std::uint64_t value, unsigned width);
std::uint64_t from_bits(std::span<const std::uint8_t> bits);

// Packs bits LSB-first into ceil(n/8) bytes, and back.
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);
Bits unpack_bits(std::span<const std::uint8_t> packed, std::size_t n);

}  // namespace lanmpc::circuit
