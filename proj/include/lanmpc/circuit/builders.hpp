#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lanmpc/circuit/circuit.hpp"

namespace lanmpc::circuit {

// Throws CircuitError unless bitwidth is 8, 16, 32 or 64.
void check_bitwidth(unsigned bitwidth);

// a (garbler, bitwidth bits) + b (evaluator, bitwidth bits) mod 2^bitwidth.
BooleanCircuit builder_add(unsigned bitwidth);
// a * b mod 2^bitwidth, schoolbook.
BooleanCircuit builder_mul(unsigned bitwidth);

// Garbler supplies the rows x cols matrix (row-major), the evaluator the
// cols-element vector; each output word r is sum_c M[r][c] * v[c] mod 2^bitwidth.
// Throws CircuitError if the circuit would not fit in 32-bit wire ids.
BooleanCircuit build_matvec(std::uint64_t rows, std::uint64_t cols, unsigned bitwidth);

// Gate counts and AND depth of build_matvec without materializing it.
CircuitStats matvec_stats(std::uint64_t rows, std::uint64_t cols, unsigned bitwidth);

// Input bit vectors in the layout build_matvec expects.
Bits words_to_bits(std::span<const std::uint64_t> words, unsigned bitwidth);
std::vector<std::uint64_t> bits_to_words(std::span<const std::uint8_t> bits, unsigned bitwidth);

std::uint64_t wrap(std::uint64_t value, unsigned bitwidth);

}  // namespace lanmpc::circuit
