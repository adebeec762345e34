#pragma once

#include <thread>
#include <vector>

#include "lanmpc/garbling/matvec.hpp"
#include "lanmpc/garbling/protocol.hpp"

namespace lanmpc::testing {

struct GcRun {
  circuit::Bits output;
  transport::ChannelStats garbler;
  transport::ChannelStats evaluator;
};

struct GcRunOptions {
  garbling::GarbleRunOptions garble;
  garbling::EvaluateRunOptions evaluate;
};

// Both parties on an in-memory pair; EXTERNAL mode gets a local label delivery.
inline GcRun run_gc(const circuit::BooleanCircuit& c, const circuit::Bits& g, const circuit::Bits& e,
                    GcRunOptions opts = {}) {
  auto [a, b] = transport::pair_in_memory();
  garbling::LocalLabelDelivery delivery;
  opts.garble.delivery = &delivery;
  opts.evaluate.delivery = &delivery;
  opts.evaluate.input_mode = opts.garble.input_mode;
  GcRun run;
  std::exception_ptr garbler_error;
  std::thread garbler([&, &a = a] {
    try {
      garbling::run_garbler(c, g, a, opts.garble);
    } catch (...) {
      garbler_error = std::current_exception();
      a.close();
    }
  });
  try {
    run.output = garbling::run_evaluator(c, e, b, opts.evaluate);
  } catch (...) {
    b.close();
    garbler.join();
    throw;
  }
  garbler.join();
  if (garbler_error) std::rethrow_exception(garbler_error);
  run.garbler = a.stats();
  run.evaluator = b.stats();
  return run;
}

// Everything the garbler sends when it runs alone in EXTERNAL mode. The queue is
// unbounded, so the garbler never waits for a reader.
template <class GarbleFn>
std::vector<std::byte> capture_transcript(GarbleFn&& garble) {
  auto [a, b] = transport::pair_in_memory(transport::MemoryPairOptions{std::nullopt, 0});
  garble(a);
  const std::size_t n = a.stats().bytes_sent;
  a.close();
  return b.recv(n);
}

}  // namespace lanmpc::testing
