#include <gtest/gtest.h>

#include <random>

#include "lanmpc/circuit/builders.hpp"
#include "lanmpc/garbling/half_gates.hpp"
#include "lanmpc/garbling/hash.hpp"
#include "support/gc_harness.hpp"
#include "support/random_circuit.hpp"

using namespace lanmpc;
using namespace lanmpc::garbling;
using circuit::BooleanCircuit;
using circuit::Bits;
using circuit::Gate;
using circuit::GateKind;
using circuit::WireRange;
using lanmpc::testing::capture_transcript;
using lanmpc::testing::random_bits;
using lanmpc::testing::random_circuit;
using lanmpc::testing::run_gc;

namespace {

Block random_block(std::mt19937_64& rng) { return Block(rng(), rng()); }

Block random_delta(std::mt19937_64& rng) {
  Block d = random_block(rng);
  d.lo |= 1;
  return d;
}

std::uint64_t expected_forward(const BooleanCircuit& c, InputMode mode) {
  return garbler_to_evaluator_bytes(c.garbler_inputs().count, c.evaluator_inputs().count,
                                    circuit::stats(c).and_count, c.outputs().size(), mode);
}

}  // namespace

// ---------------------------------------------------------------------------
// Half-gates primitives

TEST(HalfGates, AllFourInputCombinationsDecodeCorrectly) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const Block delta = random_delta(rng), a0 = random_block(rng), b0 = random_block(rng);
    const std::uint64_t idx = rng() >> 2;
    const auto [table, c0] = garble_and(a0, b0, delta, idx);
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        const Block c = eval_and(x ? a0 ^ delta : a0, y ? b0 ^ delta : b0, table, idx);
        ASSERT_EQ(c, (x & y) ? c0 ^ delta : c0) << trial << " " << x << y;
      }
    }
  }
}

TEST(HalfGates, PinnedRegressionVector) {
  // Independently computed by tests/oracles/half_gates.py.
  const Block a0(0, 1), b0(0, 2), delta(0x0123456789abcdefULL, 0xfedcba9876543211ULL);
  const auto [table, c0] = garble_and(a0, b0, delta, 0);
  EXPECT_EQ(table.gen, Block(0xbe5a38ab2aec613cULL, 0x96062f9a24ef50d1ULL));
  EXPECT_EQ(table.eval, Block(0x3fd9948ad3ae497bULL, 0x15b14c7303ce655dULL));
  EXPECT_EQ(c0, Block(0xfb3ce7fdcc2f9512ULL, 0x52a69d76bda5b01dULL));
  std::byte raw[GarbledAndTable::kBytes];
  table.store(raw);
  EXPECT_EQ(raw[0], std::byte{0xd1});
  EXPECT_EQ(raw[31], std::byte{0x3f});
  EXPECT_EQ(GarbledAndTable::load(raw), table);
}

TEST(HalfGates, WrongTweakDoesNotDecode) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const Block delta = random_delta(rng), a0 = random_block(rng), b0 = random_block(rng);
    const auto [table, c0] = garble_and(a0, b0, delta, 7);
    const Block c = eval_and(a0 ^ delta, b0, table, 8);
    ASSERT_NE(c, c0);
    ASSERT_NE(c, c0 ^ delta);
  }
}

TEST(HalfGates, XorIsFree) {
  std::mt19937_64 rng(3);
  const Block l = random_block(rng), delta = random_delta(rng), m = random_block(rng);
  EXPECT_EQ(garble_xor(l, l), Block{});
  const Block c0 = garble_xor(l, m);
  const Block c = eval_xor(l ^ delta, m);
  EXPECT_TRUE(c == c0 || c == (c0 ^ delta));
}

TEST(HalfGates, BatchMatchesScalar) {
  std::mt19937_64 rng(4);
  const Block delta = random_delta(rng);
  for (std::size_t n : {1u, 3u, 256u, 1000u}) {
    std::vector<Block> a(n), b(n), c0(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = random_block(rng);
      b[i] = random_block(rng);
    }
    std::vector<std::byte> tables(n * GarbledAndTable::kBytes);
    garble_and_batch(a, b, delta, 100, tables, c0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [t, out] = garble_and(a[i], b[i], delta, 100 + i);
      ASSERT_EQ(GarbledAndTable::load(tables.data() + 32 * i), t);
      ASSERT_EQ(c0[i], out);
    }
    // Evaluate with x = 1, y = 1 on every gate.
    std::vector<Block> ax(n), bx(n);
    for (std::size_t i = 0; i < n; ++i) {
      ax[i] = a[i] ^ delta;
      bx[i] = b[i] ^ delta;
    }
    eval_and_batch(ax, bx, tables, 100, c);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(c[i], c0[i] ^ delta);
  }
}

// ---------------------------------------------------------------------------
// Protocol

TEST(GcProtocol, AllTwoInputGatesExhaustively) {
  // out0 = a AND b, out1 = a XOR b, out2 = NOT a, out3 = NAND, out4 = OR (via De Morgan).
  const std::vector<Gate> gates = {
      {GateKind::kAnd, 0, 1, 2}, {GateKind::kXor, 0, 1, 3}, {GateKind::kInv, 0, 0, 4},
      {GateKind::kInv, 2, 2, 5}, {GateKind::kInv, 1, 1, 6}, {GateKind::kAnd, 4, 6, 7},
      {GateKind::kInv, 7, 7, 8},
  };
  const BooleanCircuit c(9, {0, 1}, {1, 1}, {2, 3, 4, 5, 8}, gates);
  for (auto mode : {InputMode::kDirect, InputMode::kExternal}) {
    for (auto api : {GateApi::kBatched, GateApi::kPerGate}) {
      for (std::uint8_t a = 0; a < 2; ++a) {
        for (std::uint8_t b = 0; b < 2; ++b) {
          lanmpc::testing::GcRunOptions o;
          o.garble.input_mode = mode;
          o.garble.gate_api = api;
          o.evaluate.gate_api = api;
          o.garble.seed = 10 * a + b;
          const auto run = run_gc(c, {a}, {b}, o);
          EXPECT_EQ(run.output, (Bits{static_cast<std::uint8_t>(a & b), static_cast<std::uint8_t>(a ^ b),
                                      static_cast<std::uint8_t>(!a), static_cast<std::uint8_t>(!(a & b)),
                                      static_cast<std::uint8_t>(a | b)}));
        }
      }
    }
  }
}

TEST(GcProtocol, RandomCircuitsMatchPlaintext) {
  std::mt19937_64 rng(5);
  for (int seed = 0; seed < 100; ++seed) {
    const unsigned g = 1 + rng() % 8, e = 1 + rng() % 8;
    const auto c = random_circuit(rng, g, e, 1 + rng() % 64, 1 + rng() % 8);
    for (int kind = 0; kind < 3; ++kind) {
      Bits gb(g, kind == 1), eb(e, kind == 1);
      if (kind == 2) {
        gb = random_bits(rng, g);
        eb = random_bits(rng, e);
      }
      lanmpc::testing::GcRunOptions o;
      o.garble.seed = static_cast<std::uint64_t>(seed);
      o.garble.input_mode = seed % 2 ? InputMode::kDirect : InputMode::kExternal;
      ASSERT_EQ(run_gc(c, gb, eb, o).output, circuit::eval_plaintext(c, gb, eb)) << seed << " " << kind;
    }
  }
}

TEST(GcProtocol, SmallMatvecMatchesOracle) {
  std::mt19937_64 rng(6);
  const auto c = circuit::build_matvec(2, 2, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const Bits g = random_bits(rng, c.garbler_inputs().count), e = random_bits(rng, c.evaluator_inputs().count);
    ASSERT_EQ(run_gc(c, g, e).output, circuit::eval_plaintext(c, g, e));
  }
  const auto big = circuit::build_matvec(8, 8, 16);
  const Bits g = random_bits(rng, big.garbler_inputs().count), e = random_bits(rng, big.evaluator_inputs().count);
  EXPECT_EQ(run_gc(big, g, e).output, circuit::eval_plaintext(big, g, e));
}

TEST(GcProtocol, TranscriptSizeIsExact) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned g = rng() % 20, e = rng() % 20;
    if (g + e == 0) continue;
    const auto c = random_circuit(rng, g, e, rng() % 200, 1 + rng() % 20);
    for (auto mode : {InputMode::kDirect, InputMode::kExternal}) {
      lanmpc::testing::GcRunOptions o;
      o.garble.input_mode = mode;
      o.garble.flush_bytes = 1 + rng() % 300;
      const auto run = run_gc(c, random_bits(rng, g), random_bits(rng, e), o);
      EXPECT_EQ(run.garbler.bytes_sent, expected_forward(c, mode));
      EXPECT_EQ(run.evaluator.bytes_sent, evaluator_to_garbler_bytes(e, mode));
      EXPECT_EQ(run.evaluator.bytes_received, run.garbler.bytes_sent);
    }
  }
}

TEST(GcProtocol, XorAndInvGatesSendNothing) {
  std::vector<Gate> gates;
  circuit::WireId next = 2;
  for (int i = 0; i < 1'000'000; ++i) {
    gates.push_back(i % 2 ? Gate{GateKind::kXor, next - 1, 0, next} : Gate{GateKind::kInv, next - 1, next - 1, next});
    ++next;
  }
  const BooleanCircuit c(next, {0, 1}, {1, 1}, {next - 1}, gates);
  // Two input labels (direct mode) and one decode byte; the gates add nothing.
  const auto run = run_gc(c, {1}, {0});
  EXPECT_EQ(run.garbler.bytes_sent, 2u * 16u + 1u);
  EXPECT_EQ(run.output, circuit::eval_plaintext(c, Bits{1}, Bits{0}));
}

TEST(GcProtocol, FixedSeedGivesIdenticalTranscript) {
  const auto c = circuit::build_matvec(3, 3, 8);
  std::mt19937_64 rng(8);
  const Bits g = random_bits(rng, c.garbler_inputs().count);
  LocalLabelDelivery d1, d2, d3;
  auto t = [&](std::uint64_t seed, LocalLabelDelivery& d) {
    return capture_transcript([&](transport::Channel& ch) {
      GarbleRunOptions o;
      o.seed = seed;
      o.input_mode = InputMode::kExternal;
      o.delivery = &d;
      run_garbler(c, g, ch, o);
    });
  };
  const auto a = t(42, d1), b = t(42, d2), other = t(43, d3);
  EXPECT_EQ(a.size(), expected_forward(c, InputMode::kExternal));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, other);
}

TEST(GcProtocol, BatchedAndPerGatePathsProduceIdenticalTranscripts) {
  std::mt19937_64 rng(9);
  const auto c = circuit::build_matvec(4, 4, 16);
  const Bits g = random_bits(rng, c.garbler_inputs().count);
  auto t = [&](GateApi api) {
    LocalLabelDelivery d;
    return capture_transcript([&](transport::Channel& ch) {
      GarbleRunOptions o;
      o.seed = 5;
      o.gate_api = api;
      o.input_mode = InputMode::kExternal;
      o.delivery = &d;
      run_garbler(c, g, ch, o);
    });
  };
  EXPECT_EQ(t(GateApi::kBatched), t(GateApi::kPerGate));
}

TEST(GcProtocol, ProgramModeMatvecMatchesMaterializedCircuit) {
  std::mt19937_64 rng(10);
  for (auto [rows, cols, w] : {std::tuple{1u, 1u, 8u}, {3u, 2u, 16u}, {5u, 7u, 8u}, {2u, 3u, 32u}}) {
    std::vector<std::uint64_t> m(rows * cols), v(cols);
    for (auto& x : m) x = circuit::wrap(rng(), w);
    for (auto& x : v) x = circuit::wrap(rng(), w);
    const auto c = circuit::build_matvec(rows, cols, w);
    for (auto api : {GateApi::kBatched, GateApi::kPerGate}) {
      GarbleRunOptions o;
      o.seed = 11;
      o.gate_api = api;
      o.input_mode = InputMode::kExternal;
      LocalLabelDelivery d1, d2;
      o.delivery = &d1;
      const auto program = capture_transcript([&](transport::Channel& ch) { garble_matvec(ch, m, rows, cols, w, o); });
      o.delivery = &d2;
      const auto materialized =
          capture_transcript([&](transport::Channel& ch) { run_garbler(c, circuit::words_to_bits(m, w), ch, o); });
      EXPECT_EQ(program, materialized) << rows << "x" << cols << "x" << w;
    }

    // And the program-mode pair computes the product.
    auto [a, b] = transport::pair_in_memory();
    std::thread garbler([&, &a = a] {
      GarbleRunOptions o;
      o.input_mode = InputMode::kDirect;
      garble_matvec(a, m, rows, cols, w, o);
    });
    EvaluateRunOptions eo;
    eo.input_mode = InputMode::kDirect;
    const auto out = evaluate_matvec(b, v, rows, cols, w, eo);
    garbler.join();
    for (std::uint64_t r = 0; r < rows; ++r) {
      std::uint64_t acc = 0;
      for (std::uint64_t k = 0; k < cols; ++k) acc += m[r * cols + k] * v[k];
      EXPECT_EQ(out[r], circuit::wrap(acc, w));
    }
  }
}

TEST(GcProtocol, FreeXorInvariantHoldsOnEveryWire) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned g = 1 + rng() % 6, e = 1 + rng() % 6;
    const auto c = random_circuit(rng, g, e, 1 + rng() % 64, 3);
    const Bits gb = random_bits(rng, g), eb = random_bits(rng, e);
    GarblerTrace trace;
    std::vector<Block> active;
    lanmpc::testing::GcRunOptions o;
    o.garble.trace = &trace;
    o.evaluate.active_labels = &active;
    run_gc(c, gb, eb, o);
    ASSERT_EQ(trace.delta.lsb(), 1);

    // Plaintext value of every wire, for the stronger check active = false ^ (v ? delta : 0).
    std::vector<std::uint8_t> v(c.wire_count(), 0);
    std::copy(gb.begin(), gb.end(), v.begin() + c.garbler_inputs().begin);
    std::copy(eb.begin(), eb.end(), v.begin() + c.evaluator_inputs().begin);
    for (const Gate& gate : c.gates()) {
      v[gate.out] = gate.kind == GateKind::kXor   ? v[gate.in0] ^ v[gate.in1]
                    : gate.kind == GateKind::kAnd ? v[gate.in0] & v[gate.in1]
                                                  : v[gate.in0] ^ 1;
    }
    std::vector<std::uint8_t> defined(c.wire_count(), 0);
    for (circuit::WireId w = 0; w < g + e; ++w) defined[w] = 1;
    for (const Gate& gate : c.gates()) defined[gate.out] = 1;
    for (circuit::WireId w = 0; w < c.wire_count(); ++w) {
      if (!defined[w]) continue;
      const Block f = trace.false_labels[w];
      ASSERT_TRUE(active[w] == f || active[w] == (f ^ trace.delta)) << "wire " << w;
      ASSERT_EQ(active[w], v[w] ? f ^ trace.delta : f) << "wire " << w;
    }
  }
}

TEST(GcProtocol, RejectsWrongInputLength) {
  const auto c = circuit::builder_add(8);
  auto [a, b] = transport::pair_in_memory();
  EXPECT_THROW(run_garbler(c, Bits(7), a), circuit::CircuitError);
  EXPECT_THROW(run_evaluator(c, Bits(9), b), circuit::CircuitError);
}

TEST(GcProtocol, ExternalModeNeedsDelivery) {
  const auto c = circuit::builder_add(8);
  auto [a, b] = transport::pair_in_memory();
  GarbleRunOptions o;
  o.input_mode = InputMode::kExternal;
  EXPECT_THROW(run_garbler(c, Bits(8), a, o), std::invalid_argument);
}

TEST(GcProtocol, ChannelClosedMidStreamSurfaces) {
  const auto c = circuit::build_matvec(2, 2, 16);
  auto [a, b] = transport::pair_in_memory();
  {
    // Send only part of the garbler's first message, then hang up.
    std::vector<std::byte> partial(100);
    a.send(partial);
    a.flush();
    a.close();
  }
  EvaluateRunOptions o;
  o.input_mode = InputMode::kExternal;
  LocalLabelDelivery d;
  o.delivery = &d;
  EXPECT_THROW(run_evaluator(c, Bits(c.evaluator_inputs().count), b, o), transport::ChannelClosed);
}

TEST(GcProtocol, StreamsInFlushSizedMessages) {
  const auto c = circuit::build_matvec(4, 4, 16);
  lanmpc::testing::GcRunOptions o;
  o.garble.flush_bytes = 4096;
  std::mt19937_64 rng(12);
  const auto run = run_gc(c, random_bits(rng, c.garbler_inputs().count), random_bits(rng, c.evaluator_inputs().count), o);
  // Streaming: many messages, none of them the whole transcript.
  EXPECT_GE(run.garbler.messages_sent, run.garbler.bytes_sent / (4096 + 4096 * GarbledAndTable::kBytes));
  EXPECT_GT(run.garbler.messages_sent, 10u);
}
