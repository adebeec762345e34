#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lanmpc/circuit/circuit.hpp"
#include "lanmpc/garbling/session.hpp"
#include "lanmpc/transport/channel.hpp"

namespace lanmpc::garbling {

enum class GateApi {
  // Independent ANDs are grouped and hashed through the batched interface.
  kBatched,
  // Every gate is a virtual call hashing one gate at a time.
  kPerGate,
};

// Debug instrumentation for the garbler: the global offset and every wire's false label.
struct GarblerTrace {
  Block delta;
  std::vector<Block> false_labels;
};

struct GarbleRunOptions {
  std::uint64_t seed = 0;
  std::size_t flush_bytes = kDefaultFlushBytes;
  InputMode input_mode = InputMode::kDirect;
  InputLabelDelivery* delivery = nullptr;
  GateApi gate_api = GateApi::kBatched;
  GarblerTrace* trace = nullptr;
};

struct EvaluateRunOptions {
  InputMode input_mode = InputMode::kDirect;
  InputLabelDelivery* delivery = nullptr;
  GateApi gate_api = GateApi::kBatched;
  // Debug instrumentation: receives every wire's active label.
  std::vector<Block>* active_labels = nullptr;
};

// Garbler -> evaluator transcript layout, all little-endian:
//   [garbler input labels, 16 B each]
//   [evaluator input labels, 16 B each; kDirect only]
//   [AND tables in gate order, 32 B each]
//   [decode bits, one per output, packed LSB-first]
// kDirect adds one evaluator -> garbler message of packed input bits.
void run_garbler(const circuit::BooleanCircuit& circuit, std::span<const std::uint8_t> garbler_bits,
                 transport::Channel& channel, const GarbleRunOptions& options = {});

circuit::Bits run_evaluator(const circuit::BooleanCircuit& circuit, std::span<const std::uint8_t> evaluator_bits,
                            transport::Channel& channel, const EvaluateRunOptions& options = {});

// Closed-form byte counts for one run.
std::uint64_t garbler_to_evaluator_bytes(std::uint64_t garbler_inputs, std::uint64_t evaluator_inputs,
                                         std::uint64_t and_count, std::uint64_t outputs, InputMode mode);
std::uint64_t evaluator_to_garbler_bytes(std::uint64_t evaluator_inputs, InputMode mode);

}  // namespace lanmpc::garbling
