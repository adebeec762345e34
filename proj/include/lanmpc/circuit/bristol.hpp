#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lanmpc/circuit/circuit.hpp"

namespace lanmpc::circuit {

// Reads a Bristol Fashion circuit. The first input value is assigned to the
// garbler and the second (if any) to the evaluator; outputs are the trailing
// wires. Only XOR, AND and INV gates are accepted. '#' starts a comment.
BooleanCircuit parse_bristol(std::string_view text);
BooleanCircuit load_bristol(const std::filesystem::path& path);

// Writes Bristol Fashion with inputs as wires [0, G+E) and outputs as the
// last wires, renumbering as needed. An output that is an input wire or that
// repeats an earlier output is copied through two INV gates.
std::string write_bristol(const BooleanCircuit& circuit);

}  // namespace lanmpc::circuit
