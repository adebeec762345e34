#include "lanmpc/garbling/matvec.hpp"

#include <stdexcept>
#include <string>

#include "lanmpc/circuit/builders.hpp"
#include "lanmpc/circuit/integer_ops.hpp"

namespace lanmpc::garbling {

namespace {

using circuit::Word;

void check_shape(std::size_t got, std::uint64_t expected, const char* what) {
  if (got != expected) {
    throw std::invalid_argument(std::string(what) + " has " + std::to_string(got) + " entries, expected " +
                                std::to_string(expected));
  }
}

std::vector<Word<Block>> words_of(std::span<const Block> labels, std::size_t first, std::size_t count, unsigned w) {
  std::vector<Word<Block>> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto src = labels.subspan((first + i) * w, w);
    out[i].assign(src.begin(), src.end());
  }
  return out;
}

// Rows are expanded from the flat label array one at a time so that only the
// vector and a single row exist as Word objects.
template <class Backend>
std::vector<Block> run_rows(Backend& backend, std::span<const Block> matrix_labels,
                            std::span<const Block> vec_labels, std::uint64_t rows, std::uint64_t cols, unsigned w) {
  const auto vec = words_of(vec_labels, 0, cols, w);
  std::vector<Block> outputs;
  outputs.reserve(rows * w);
  for (std::uint64_t r = 0; r < rows; ++r) {
    const auto row = words_of(matrix_labels, r * cols, cols, w);
    const auto sum = circuit::matvec_row(backend, std::span<const Word<Block>>(row), std::span<const Word<Block>>(vec));
    outputs.insert(outputs.end(), sum.begin(), sum.end());
  }
  return outputs;
}

template <class Party>
std::vector<Block> run_matvec(Party& party, GateApi api, std::span<const Block> matrix_labels,
                              std::span<const Block> vec_labels, std::uint64_t rows, std::uint64_t cols, unsigned w) {
  if (api == GateApi::kPerGate) {
    auto sink = make_gate_sink(party);
    PerGateBackend backend(*sink);
    return run_rows(backend, matrix_labels, vec_labels, rows, cols, w);
  }
  return run_rows(party, matrix_labels, vec_labels, rows, cols, w);
}

}  // namespace

void garble_matvec(transport::Channel& channel, std::span<const std::uint64_t> matrix, std::uint64_t rows,
                   std::uint64_t cols, unsigned bitwidth, const GarbleRunOptions& options) {
  circuit::check_bitwidth(bitwidth);
  check_shape(matrix.size(), rows * cols, "matrix");
  Garbler garbler(channel, GarblerOptions{options.seed, options.flush_bytes});
  std::vector<Block> matrix_labels = garbler.input_garbler(circuit::words_to_bits(matrix, bitwidth));
  const std::vector<Block> vec_labels = garbler.input_evaluator(cols * bitwidth, options.input_mode, options.delivery);
  const auto outputs = run_matvec(garbler, options.gate_api, matrix_labels, vec_labels, rows, cols, bitwidth);
  garbler.reveal(outputs);
  if (options.trace) {
    options.trace->delta = garbler.delta();
    options.trace->false_labels.clear();
  }
}

std::vector<std::uint64_t> evaluate_matvec(transport::Channel& channel, std::span<const std::uint64_t> vec,
                                           std::uint64_t rows, std::uint64_t cols, unsigned bitwidth,
                                           const EvaluateRunOptions& options) {
  circuit::check_bitwidth(bitwidth);
  check_shape(vec.size(), cols, "vector");
  Evaluator evaluator(channel);
  const std::vector<Block> matrix_labels = evaluator.input_garbler(rows * cols * bitwidth);
  const std::vector<Block> vec_labels =
      evaluator.input_evaluator(circuit::words_to_bits(vec, bitwidth), options.input_mode, options.delivery);
  const auto outputs = run_matvec(evaluator, options.gate_api, matrix_labels, vec_labels, rows, cols, bitwidth);
  return circuit::bits_to_words(evaluator.reveal(outputs), bitwidth);
}

}  // namespace lanmpc::garbling
