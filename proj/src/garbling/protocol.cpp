#include "lanmpc/garbling/protocol.hpp"

#include <string>

namespace lanmpc::garbling {

using circuit::BooleanCircuit;
using circuit::CircuitError;
using circuit::Gate;
using circuit::GateKind;

namespace {

void check_inputs(const char* who, std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw CircuitError(std::string(who) + " expected " + std::to_string(expected) + " input bits, got " +
                       std::to_string(got));
  }
}

// Runs gates through one virtual call each.
void execute_per_gate(const BooleanCircuit& c, std::vector<Block>& labels, GateSink& sink) {
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::kXor: labels[g.out] = sink.xor_gate(labels[g.in0], labels[g.in1]); break;
      case GateKind::kAnd: labels[g.out] = sink.and_gate(labels[g.in0], labels[g.in1]); break;
      case GateKind::kInv: labels[g.out] = sink.inv_gate(labels[g.in0]); break;
    }
  }
}

// Collects runs of mutually independent ANDs and hands them to and_many. A
// gate that reads a not-yet-computed AND output drains the pending run first,
// so gate order (and therefore the transcript) is unchanged.
template <class Party>
void execute_batched(const BooleanCircuit& c, std::vector<Block>& labels, Party& party) {
  constexpr std::size_t kMaxRun = 1024;
  std::vector<std::uint8_t> pending(c.wire_count(), 0);
  std::vector<Block> lhs, rhs, out;
  std::vector<circuit::WireId> dst;
  lhs.reserve(kMaxRun);
  rhs.reserve(kMaxRun);
  dst.reserve(kMaxRun);

  auto drain = [&] {
    if (dst.empty()) return;
    out.resize(dst.size());
    party.and_many(lhs, rhs, out);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      labels[dst[i]] = out[i];
      pending[dst[i]] = 0;
    }
    lhs.clear();
    rhs.clear();
    dst.clear();
  };

  for (const Gate& g : c.gates()) {
    if (pending[g.in0] || (g.kind != GateKind::kInv && pending[g.in1])) drain();
    switch (g.kind) {
      case GateKind::kXor: labels[g.out] = party.xor_gate(labels[g.in0], labels[g.in1]); break;
      case GateKind::kInv: labels[g.out] = party.inv_gate(labels[g.in0]); break;
      case GateKind::kAnd:
        lhs.push_back(labels[g.in0]);
        rhs.push_back(labels[g.in1]);
        dst.push_back(g.out);
        pending[g.out] = 1;
        if (dst.size() == kMaxRun) drain();
        break;
    }
  }
  drain();
}

template <class Party>
void execute(const BooleanCircuit& c, std::vector<Block>& labels, Party& party, GateApi api) {
  if (api == GateApi::kPerGate) {
    auto sink = make_gate_sink(party);
    execute_per_gate(c, labels, *sink);
  } else {
    execute_batched(c, labels, party);
  }
}

std::vector<Block> gather(const BooleanCircuit& c, const std::vector<Block>& labels) {
  std::vector<Block> out;
  out.reserve(c.outputs().size());
  for (auto w : c.outputs()) out.push_back(labels[w]);
  return out;
}

}  // namespace

void run_garbler(const BooleanCircuit& circuit, std::span<const std::uint8_t> garbler_bits,
                 transport::Channel& channel, const GarbleRunOptions& options) {
  check_inputs("garbler", circuit.garbler_inputs().count, garbler_bits.size());
  Garbler garbler(channel, GarblerOptions{options.seed, options.flush_bytes});
  std::vector<Block> labels(circuit.wire_count());

  const auto g_labels = garbler.input_garbler(garbler_bits);
  std::copy(g_labels.begin(), g_labels.end(), labels.begin() + circuit.garbler_inputs().begin);
  const auto e_labels = garbler.input_evaluator(circuit.evaluator_inputs().count, options.input_mode, options.delivery);
  std::copy(e_labels.begin(), e_labels.end(), labels.begin() + circuit.evaluator_inputs().begin);

  execute(circuit, labels, garbler, options.gate_api);
  garbler.reveal(gather(circuit, labels));

  if (options.trace) {
    options.trace->delta = garbler.delta();
    options.trace->false_labels = std::move(labels);
  }
}

circuit::Bits run_evaluator(const BooleanCircuit& circuit, std::span<const std::uint8_t> evaluator_bits,
                            transport::Channel& channel, const EvaluateRunOptions& options) {
  check_inputs("evaluator", circuit.evaluator_inputs().count, evaluator_bits.size());
  Evaluator evaluator(channel);
  std::vector<Block> labels(circuit.wire_count());

  const auto g_labels = evaluator.input_garbler(circuit.garbler_inputs().count);
  std::copy(g_labels.begin(), g_labels.end(), labels.begin() + circuit.garbler_inputs().begin);
  const auto e_labels = evaluator.input_evaluator(evaluator_bits, options.input_mode, options.delivery);
  std::copy(e_labels.begin(), e_labels.end(), labels.begin() + circuit.evaluator_inputs().begin);

  execute(circuit, labels, evaluator, options.gate_api);
  auto bits = evaluator.reveal(gather(circuit, labels));
  if (options.active_labels) *options.active_labels = std::move(labels);
  return bits;
}

std::uint64_t garbler_to_evaluator_bytes(std::uint64_t garbler_inputs, std::uint64_t evaluator_inputs,
                                         std::uint64_t and_count, std::uint64_t outputs, InputMode mode) {
  const std::uint64_t labels = garbler_inputs + (mode == InputMode::kDirect ? evaluator_inputs : 0);
  return 16 * labels + GarbledAndTable::kBytes * and_count + (outputs + 7) / 8;
}

std::uint64_t evaluator_to_garbler_bytes(std::uint64_t evaluator_inputs, InputMode mode) {
  return mode == InputMode::kDirect ? (evaluator_inputs + 7) / 8 : 0;
}

}  // namespace lanmpc::garbling
