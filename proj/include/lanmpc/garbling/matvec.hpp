#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lanmpc/garbling/protocol.hpp"
#include "lanmpc/transport/channel.hpp"

namespace lanmpc::garbling {

// Garbled matrix-vector product driven straight from the integer circuit
// code, without materializing the circuit. Gate order and wire layout match
// circuit::build_matvec, so the transcript is byte-identical to
// run_garbler/run_evaluator on that circuit with the same options.
// Matrix entries (rows x cols, row-major) belong to the garbler, the vector to
// the evaluator; values are taken mod 2^bitwidth.
void garble_matvec(transport::Channel& channel, std::span<const std::uint64_t> matrix, std::uint64_t rows,
                   std::uint64_t cols, unsigned bitwidth, const GarbleRunOptions& options = {});

std::vector<std::uint64_t> evaluate_matvec(transport::Channel& channel, std::span<const std::uint64_t> vec,
                                           std::uint64_t rows, std::uint64_t cols, unsigned bitwidth,
                                           const EvaluateRunOptions& options = {});

}  // namespace lanmpc::garbling
