#include "lanmpc/circuit/circuit.hpp"

#include <algorithm>
#include <string>

namespace lanmpc::circuit {

namespace {

std::string wire_str(WireId w) { return "wire " + std::to_string(w); }

}  // namespace

BooleanCircuit::BooleanCircuit(WireId wire_count, WireRange garbler_inputs, WireRange evaluator_inputs,
                               std::vector<WireId> outputs, std::vector<Gate> gates)
    : wire_count_(wire_count),
      garbler_inputs_(garbler_inputs),
      evaluator_inputs_(evaluator_inputs),
      outputs_(std::move(outputs)),
      gates_(std::move(gates)) {
  auto in_bounds = [&](const WireRange& r) {
    return static_cast<std::uint64_t>(r.begin) + r.count <= wire_count_;
  };
  if (!in_bounds(garbler_inputs_) || !in_bounds(evaluator_inputs_)) {
    throw CircuitError("input range exceeds wire count");
  }
  if (garbler_inputs_.count > 0 && evaluator_inputs_.count > 0 &&
      garbler_inputs_.begin < evaluator_inputs_.end() && evaluator_inputs_.begin < garbler_inputs_.end()) {
    throw CircuitError("garbler and evaluator input ranges overlap");
  }

  std::vector<std::uint8_t> defined(wire_count_, 0);
  for (WireId w = garbler_inputs_.begin; w < garbler_inputs_.end(); ++w) defined[w] = 1;
  for (WireId w = evaluator_inputs_.begin; w < evaluator_inputs_.end(); ++w) defined[w] = 1;

  auto check_input = [&](WireId w, std::size_t gate) {
    if (w >= wire_count_ || !defined[w]) {
      throw CircuitError("gate " + std::to_string(gate) + " reads undefined " + wire_str(w));
    }
  };
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    check_input(g.in0, i);
    if (g.kind != GateKind::kInv) check_input(g.in1, i);
    if (g.out >= wire_count_) throw CircuitError("gate " + std::to_string(i) + " writes out-of-range " + wire_str(g.out));
    if (defined[g.out]) throw CircuitError("gate " + std::to_string(i) + " redefines " + wire_str(g.out));
    defined[g.out] = 1;
  }
  for (WireId w : outputs_) {
    if (w >= wire_count_ || !defined[w]) throw CircuitError("output " + wire_str(w) + " is never defined");
  }
}

CircuitStats stats(const BooleanCircuit& circuit) {
  CircuitStats s;
  std::vector<std::uint32_t> depth(circuit.wire_count(), 0);
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::kXor:
        ++s.xor_count;
        depth[g.out] = std::max(depth[g.in0], depth[g.in1]);
        break;
      case GateKind::kAnd:
        ++s.and_count;
        depth[g.out] = std::max(depth[g.in0], depth[g.in1]) + 1;
        s.and_depth = std::max<std::uint64_t>(s.and_depth, depth[g.out]);
        break;
      case GateKind::kInv:
        ++s.inv_count;
        depth[g.out] = depth[g.in0];
        break;
    }
  }
  return s;
}

Bits eval_plaintext(const BooleanCircuit& circuit, std::span<const std::uint8_t> garbler_bits,
                    std::span<const std::uint8_t> evaluator_bits) {
  if (garbler_bits.size() != circuit.garbler_inputs().count) {
    throw CircuitError("expected " + std::to_string(circuit.garbler_inputs().count) + " garbler bits, got " +
                       std::to_string(garbler_bits.size()));
  }
  if (evaluator_bits.size() != circuit.evaluator_inputs().count) {
    throw CircuitError("expected " + std::to_string(circuit.evaluator_inputs().count) + " evaluator bits, got " +
                       std::to_string(evaluator_bits.size()));
  }
  std::vector<std::uint8_t> wire(circuit.wire_count(), 0);
  std::copy(garbler_bits.begin(), garbler_bits.end(), wire.begin() + circuit.garbler_inputs().begin);
  std::copy(evaluator_bits.begin(), evaluator_bits.end(), wire.begin() + circuit.evaluator_inputs().begin);
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::kXor: wire[g.out] = wire[g.in0] ^ wire[g.in1]; break;
      case GateKind::kAnd: wire[g.out] = wire[g.in0] & wire[g.in1]; break;
      case GateKind::kInv: wire[g.out] = wire[g.in0] ^ 1; break;
    }
  }
  Bits out;
  out.reserve(circuit.outputs().size());
  for (WireId w : circuit.outputs()) out.push_back(wire[w]);
  return out;
}

Bits to_bits(std::uint64_t value, unsigned width) {
  Bits out;
  append_bits(out, value, width);
  return out;
}

void append_bits(Bits& out, std::uint64_t value, unsigned width) {
  for (unsigned i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
}

std::uint64_t from_bits(std::span<const std::uint8_t> bits) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size() && i < 64; ++i) v |= static_cast<std::uint64_t>(bits[i] & 1u) << i;
  return v;
}

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) out[i / 8] |= static_cast<std::uint8_t>((bits[i] & 1u) << (i % 8));
  return out;
}

Bits unpack_bits(std::span<const std::uint8_t> packed, std::size_t n) {
  Bits out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (packed[i / 8] >> (i % 8)) & 1u;
  return out;
}

}  // namespace lanmpc::circuit
