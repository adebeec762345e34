#pragma once

#include <cstdint>

#include "lanmpc/circuit/circuit.hpp"
#include "lanmpc/transport/network_profile.hpp"

namespace lanmpc::cost {

struct ProtocolFootprint {
  double bytes_forward = 0;   // garbler -> evaluator, or party 0 -> party 1
  double bytes_backward = 0;
  double rounds = 0;          // dependent flushes on the critical path
  double cpu_seconds = 0;     // calibrated, per party

  // Throws std::invalid_argument if any field is negative or NaN.
  void validate() const;
};

// One-directional garbled-circuit transfer: 16 bytes per input label, 32 per
// AND, one decode bit per output. evaluator_direct_inputs adds the clear-text
// input message of the insecure direct input mode as backward bytes and one
// extra round.
ProtocolFootprint gc_footprint(const circuit::CircuitStats& stats, std::uint64_t input_labels, std::uint64_t outputs,
                               std::uint64_t evaluator_direct_inputs = 0);

// Beaver multiplications: 16 bytes per multiplication and 8 per opened value,
// each direction; one round per multiplication layer plus one for the final opening.
// Throws std::invalid_argument if mult_depth > mult_count.
ProtocolFootprint ss_footprint(std::uint64_t mult_count, std::uint64_t mult_depth, std::uint64_t opens);

struct Prediction {
  double cpu_term = 0;
  double transfer_term = 0;
  double round_term = 0;  // rounds * (rtt + per-message overhead)
  double total = 0;       // max(cpu, transfer) + round_term

  double round_fraction() const { return total > 0 ? round_term / total : 0; }
};

Prediction breakdown(const ProtocolFootprint& footprint, const transport::NetworkProfile& profile);

inline double predict_runtime(const ProtocolFootprint& footprint, const transport::NetworkProfile& profile) {
  return breakdown(footprint, profile).total;
}

}  // namespace lanmpc::cost
