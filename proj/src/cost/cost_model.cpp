#include "lanmpc/cost/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lanmpc::cost {

void ProtocolFootprint::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v >= 0)) throw std::invalid_argument(std::string("footprint ") + name + " must be non-negative");
  };
  check(bytes_forward, "bytes_forward");
  check(bytes_backward, "bytes_backward");
  check(rounds, "rounds");
  check(cpu_seconds, "cpu_seconds");
}

ProtocolFootprint gc_footprint(const circuit::CircuitStats& stats, std::uint64_t input_labels, std::uint64_t outputs,
                               std::uint64_t evaluator_direct_inputs) {
  ProtocolFootprint f;
  f.bytes_forward = 16.0 * static_cast<double>(input_labels) + 32.0 * static_cast<double>(stats.and_count) +
                    static_cast<double>((outputs + 7) / 8);
  f.bytes_backward = static_cast<double>((evaluator_direct_inputs + 7) / 8);
  // Direct input delivery waits for the evaluator's bits before garbling.
  f.rounds = evaluator_direct_inputs > 0 ? 2 : 1;
  return f;
}

ProtocolFootprint ss_footprint(std::uint64_t mult_count, std::uint64_t mult_depth, std::uint64_t opens) {
  if (mult_depth > mult_count) {
    throw std::invalid_argument("multiplicative depth " + std::to_string(mult_depth) + " exceeds multiplication count " +
                                std::to_string(mult_count));
  }
  ProtocolFootprint f;
  f.bytes_forward = 16.0 * static_cast<double>(mult_count) + 8.0 * static_cast<double>(opens);
  f.bytes_backward = f.bytes_forward;
  f.rounds = static_cast<double>(mult_depth) + 1;
  return f;
}

Prediction breakdown(const ProtocolFootprint& footprint, const transport::NetworkProfile& profile) {
  footprint.validate();
  profile.validate();
  Prediction p;
  p.cpu_term = footprint.cpu_seconds;
  p.transfer_term = profile.transfer_seconds(std::max(footprint.bytes_forward, footprint.bytes_backward));
  p.round_term = footprint.rounds * profile.rtt_s + footprint.rounds * profile.per_message_overhead_s;
  p.total = std::max(p.cpu_term, p.transfer_term) + p.round_term;
  return p;
}

}  // namespace lanmpc::cost
