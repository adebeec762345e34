#include <gtest/gtest.h>

#include <map>
#include <random>

#include "lanmpc/circuit/bristol.hpp"
#include "lanmpc/circuit/builders.hpp"
#include "lanmpc/circuit/circuit.hpp"
#include "lanmpc/circuit/integer_ops.hpp"

using namespace lanmpc::circuit;

namespace {

// Independent reference: evaluates gates by recursive lookup from the outputs,
// with its own wire table keyed by gate output.
class NaiveInterpreter {
 public:
  NaiveInterpreter(const BooleanCircuit& c, const Bits& g, const Bits& e) : c_(c) {
    for (std::size_t i = 0; i < g.size(); ++i) value_[c.garbler_inputs().begin + static_cast<WireId>(i)] = g[i];
    for (std::size_t i = 0; i < e.size(); ++i) value_[c.evaluator_inputs().begin + static_cast<WireId>(i)] = e[i];
    for (const Gate& gate : c.gates()) producer_[gate.out] = gate;
  }

  Bits run() {
    Bits out;
    for (WireId w : c_.outputs()) out.push_back(get(w));
    return out;
  }

 private:
  int get(WireId w) {
    if (auto it = value_.find(w); it != value_.end()) return it->second;
    const Gate& g = producer_.at(w);
    int v = 0;
    if (g.kind == GateKind::kXor) v = get(g.in0) != get(g.in1);
    if (g.kind == GateKind::kAnd) v = get(g.in0) && get(g.in1);
    if (g.kind == GateKind::kInv) v = !get(g.in0);
    value_[w] = v;
    return v;
  }

  const BooleanCircuit& c_;
  std::map<WireId, int> value_;
  std::map<WireId, Gate> producer_;
};

BooleanCircuit random_circuit(std::mt19937_64& rng, unsigned g_in, unsigned e_in, unsigned gates, unsigned outputs) {
  std::vector<Gate> gs;
  WireId next = g_in + e_in;
  for (unsigned i = 0; i < gates; ++i) {
    const auto kind = static_cast<GateKind>(rng() % 3);
    const WireId a = static_cast<WireId>(rng() % next);
    const WireId b = static_cast<WireId>(rng() % next);
    gs.push_back(Gate{kind, a, kind == GateKind::kInv ? a : b, next++});
  }
  std::vector<WireId> outs;
  for (unsigned i = 0; i < outputs; ++i) outs.push_back(static_cast<WireId>(rng() % next));
  return BooleanCircuit(next, WireRange{0, g_in}, WireRange{g_in, e_in}, outs, gs);
}

Bits bits_of(std::uint64_t v, unsigned n) { return to_bits(v, n); }

// Closed-form gate counts of the ripple adder and truncated schoolbook multiplier.
std::uint64_t add_ands(std::uint64_t n) { return n - 1; }
std::uint64_t add_xors(std::uint64_t n) { return n == 1 ? 1 : 4 * n - 5; }
std::uint64_t mul_ands(std::uint64_t w) {
  std::uint64_t total = w * (w + 1) / 2;
  for (std::uint64_t n = 1; n < w; ++n) total += add_ands(n);
  return total;
}
std::uint64_t mul_xors(std::uint64_t w) {
  std::uint64_t total = 0;
  for (std::uint64_t n = 1; n < w; ++n) total += add_xors(n);
  return total;
}

}  // namespace

TEST(BooleanCircuit, PlaintextMatchesNaiveInterpreterExhaustively) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned g = 1 + rng() % 5, e = rng() % 6;
    const auto c = random_circuit(rng, g, e, 1 + rng() % 40, 1 + rng() % 6);
    for (std::uint64_t x = 0; x < (1ULL << (g + e)); ++x) {
      const Bits gb = bits_of(x, g), eb = bits_of(x >> g, e);
      ASSERT_EQ(eval_plaintext(c, gb, eb), NaiveInterpreter(c, gb, eb).run()) << "trial " << trial << " x " << x;
    }
  }
}

TEST(BooleanCircuit, ValidationRejectsMalformedCircuits) {
  // Reads a wire before it is defined.
  EXPECT_THROW(BooleanCircuit(4, {0, 1}, {1, 1}, {3}, {{GateKind::kAnd, 0, 3, 2}, {GateKind::kXor, 0, 1, 3}}),
               CircuitError);
  // Redefines an input.
  EXPECT_THROW(BooleanCircuit(3, {0, 1}, {1, 1}, {1}, {{GateKind::kAnd, 0, 1, 1}}), CircuitError);
  // Overlapping input ranges.
  EXPECT_THROW(BooleanCircuit(3, {0, 2}, {1, 1}, {0}, {}), CircuitError);
  // Undefined output.
  EXPECT_THROW(BooleanCircuit(3, {0, 1}, {1, 1}, {2}, {}), CircuitError);
  // Out of range.
  EXPECT_THROW(BooleanCircuit(3, {0, 1}, {1, 1}, {0}, {{GateKind::kXor, 0, 1, 5}}), CircuitError);
}

TEST(BooleanCircuit, EvalRejectsWrongInputLength) {
  const auto c = builder_add(8);
  EXPECT_THROW(eval_plaintext(c, Bits(7), Bits(8)), CircuitError);
  EXPECT_THROW(eval_plaintext(c, Bits(8), Bits(9)), CircuitError);
}

TEST(BooleanCircuit, StatsOfSimpleShapes) {
  const BooleanCircuit passthrough(2, {0, 1}, {1, 1}, {0, 1}, {});
  EXPECT_EQ(stats(passthrough), CircuitStats{});

  std::vector<Gate> chain;
  for (WireId i = 0; i < 10; ++i) chain.push_back({GateKind::kAnd, i == 0 ? 0u : i + 1, 1, i + 2});
  const BooleanCircuit c(12, {0, 1}, {1, 1}, {11}, chain);
  EXPECT_EQ(stats(c).and_count, 10u);
  EXPECT_EQ(stats(c).and_depth, 10u);
}

TEST(BitHelpers, PackingIsLsbFirst) {
  const Bits b = {1, 0, 0, 0, 0, 0, 0, 0, 1, 1};
  const auto p = pack_bits(b);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], 0x01);
  EXPECT_EQ(p[1], 0x03);
  EXPECT_EQ(unpack_bits(p, b.size()), b);
  EXPECT_EQ(from_bits(to_bits(0xdeadbeef, 32)), 0xdeadbeefu);
}

TEST(Builders, AdderAndMultiplierCounts) {
  for (unsigned w : {8u, 16u, 32u, 64u}) {
    const auto a = stats(builder_add(w));
    EXPECT_EQ(a.and_count, add_ands(w));
    EXPECT_EQ(a.xor_count, add_xors(w));
    EXPECT_EQ(a.and_depth, w - 1);
    const auto m = stats(builder_mul(w));
    EXPECT_EQ(m.and_count, mul_ands(w)) << w;
    EXPECT_EQ(m.xor_count, mul_xors(w)) << w;
  }
  // Frozen values.
  EXPECT_EQ(stats(builder_add(32)).and_count, 31u);
  EXPECT_EQ(stats(builder_mul(8)).and_count, 57u);
  EXPECT_EQ(stats(builder_mul(32)).and_count, 993u);
  EXPECT_EQ(stats(builder_mul(32)).xor_count, 1831u);
}

TEST(Builders, RejectUnsupportedBitwidth) {
  EXPECT_THROW(builder_add(12), CircuitError);
  EXPECT_THROW(build_matvec(2, 2, 7), CircuitError);
  EXPECT_THROW(matvec_stats(0, 2, 8), CircuitError);
}

TEST(Builders, AddAndMulAreModular) {
  std::mt19937_64 rng(2);
  for (unsigned w : {8u, 16u, 32u, 64u}) {
    const auto add = builder_add(w), mul = builder_mul(w);
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t a = wrap(rng(), w), b = wrap(rng(), w);
      EXPECT_EQ(from_bits(eval_plaintext(add, to_bits(a, w), to_bits(b, w))), wrap(a + b, w));
      EXPECT_EQ(from_bits(eval_plaintext(mul, to_bits(a, w), to_bits(b, w))), wrap(a * b, w));
    }
  }
  // Wrap boundary.
  EXPECT_EQ(from_bits(eval_plaintext(builder_add(8), to_bits(255, 8), to_bits(1, 8))), 0u);
}

TEST(Builders, MatvecMatchesIntegerOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
    const unsigned w = rng() % 2 ? 8 : 16;
    const auto c = build_matvec(rows, cols, w);
    std::vector<std::uint64_t> m(rows * cols), v(cols);
    for (auto& x : m) x = wrap(rng(), w);
    for (auto& x : v) x = wrap(rng(), w);
    const auto out = bits_to_words(eval_plaintext(c, words_to_bits(m, w), words_to_bits(v, w)), w);
    ASSERT_EQ(out.size(), rows);
    for (std::uint64_t r = 0; r < rows; ++r) {
      std::uint64_t acc = 0;
      for (std::uint64_t k = 0; k < cols; ++k) acc += m[r * cols + k] * v[k];
      EXPECT_EQ(out[r], wrap(acc, w));
    }
  }
}

TEST(Builders, MatvecStatsComposeFromFragments) {
  // One product per entry and cols-1 additions per row.
  for (auto [rows, cols, w] : {std::tuple{1u, 1u, 8u}, {3u, 5u, 16u}, {4u, 4u, 32u}, {2u, 7u, 64u}}) {
    const auto s = matvec_stats(rows, cols, w);
    const std::uint64_t per_row = cols * mul_ands(w) + (cols - 1) * add_ands(w);
    EXPECT_EQ(s.and_count, rows * per_row);
    EXPECT_EQ(s.xor_count, rows * (cols * mul_xors(w) + (cols - 1) * add_xors(w)));
    EXPECT_EQ(s, stats(build_matvec(rows, cols, w)));
  }
  EXPECT_EQ(matvec_stats(1, 1, 8), stats(builder_mul(8)));
  EXPECT_EQ(matvec_stats(1024, 1024, 32).and_count, 1'073'710'080u);
  EXPECT_EQ(matvec_stats(256, 256, 32).and_count, 67'100'928u);
}

TEST(IntegerOps, BackendsAgree) {
  // The counting backend sees exactly the gates the recorder emits.
  CircuitRecorder rec(16, 16);
  GateCounter counter;
  std::vector<Word<WireId>> a(2), b(2);
  std::vector<Word<std::uint32_t>> ca(2), cb(2);
  for (unsigned l = 0; l < 2; ++l) {
    for (unsigned i = 0; i < 8; ++i) {
      a[l].push_back(rec.garbler_wire(l * 8 + i));
      b[l].push_back(rec.evaluator_wire(l * 8 + i));
      ca[l].push_back(0);
      cb[l].push_back(0);
    }
  }
  auto out = mul_lanes(rec, std::span<const Word<WireId>>(a), std::span<const Word<WireId>>(b));
  mul_lanes(counter, std::span<const Word<std::uint32_t>>(ca), std::span<const Word<std::uint32_t>>(cb));
  std::vector<WireId> outs;
  for (auto& w : out) outs.insert(outs.end(), w.begin(), w.end());
  const auto c = std::move(rec).finish(outs);
  EXPECT_EQ(stats(c), counter.stats());
}

// ---------------------------------------------------------------------------
// Bristol Fashion

TEST(Bristol, ParsesMinimalFile) {
  const auto c = parse_bristol("1 3\n2 1 1\n1 1\n2 1 0 1 2 AND\n");
  EXPECT_EQ(stats(c).and_count, 1u);
  EXPECT_EQ(c.garbler_inputs().count, 1u);
  EXPECT_EQ(c.evaluator_inputs().count, 1u);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      EXPECT_EQ(eval_plaintext(c, Bits{static_cast<std::uint8_t>(x)}, Bits{static_cast<std::uint8_t>(y)}),
                Bits{static_cast<std::uint8_t>(x & y)});
    }
  }
}

TEST(Bristol, AcceptsCommentsAndBlankLines) {
  const auto c = load_bristol(std::string(LANMPC_TEST_DATA) + "/logic-and-4-bit.txt");
  EXPECT_EQ(stats(c).and_count, 3u);
  EXPECT_EQ(eval_plaintext(c, Bits{1, 1}, Bits{1, 1}), Bits{1});
  EXPECT_EQ(eval_plaintext(c, Bits{1, 1}, Bits{1, 0}), Bits{0});
}

TEST(Bristol, Errors) {
  EXPECT_THROW(parse_bristol(""), CircuitError);
  EXPECT_THROW(parse_bristol("1 3\n2 1\n1 1\n"), CircuitError);
  try {
    parse_bristol("1 3\n2 1 1\n1 1\n2 1 0 1 2 MAND\n");
    FAIL();
  } catch (const CircuitError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown opcode"), std::string::npos) << e.what();
  }
  // Gate reads wire 2 before it exists.
  EXPECT_THROW(parse_bristol("2 4\n2 1 1\n1 1\n2 1 0 2 3 AND\n2 1 0 1 2 XOR\n"), CircuitError);
  // Declared gate count disagrees.
  EXPECT_THROW(parse_bristol("2 3\n2 1 1\n1 1\n2 1 0 1 2 AND\n"), CircuitError);
  // Wrong arity.
  EXPECT_THROW(parse_bristol("1 3\n2 1 1\n1 1\n1 1 0 2 AND\n"), CircuitError);
}

TEST(Bristol, Adder64IsIntegerAddition) {
  const auto c = load_bristol(std::string(LANMPC_TEST_DATA) + "/adder64.txt");
  ASSERT_EQ(c.garbler_inputs().count, 64u);
  ASSERT_EQ(c.evaluator_inputs().count, 64u);
  ASSERT_EQ(c.outputs().size(), 64u);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t a = rng(), b = rng();
    ASSERT_EQ(from_bits(eval_plaintext(c, to_bits(a, 64), to_bits(b, 64))), a + b);
  }
}

TEST(Bristol, WriteThenParsePreservesStructureAndFunction) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned g = 1 + rng() % 4, e = 1 + rng() % 4;
    const auto c = random_circuit(rng, g, e, 1 + rng() % 30, 1 + rng() % 5);
    const auto text = write_bristol(c);
    const auto d = parse_bristol(text);
    EXPECT_EQ(write_bristol(d), text);
    const auto sc = stats(c), sd = stats(d);
    EXPECT_EQ(sd.and_count, sc.and_count);
    EXPECT_EQ(sd.xor_count, sc.xor_count);
    EXPECT_EQ(sd.and_depth, sc.and_depth);
    for (std::uint64_t x = 0; x < (1ULL << (g + e)); ++x) {
      const Bits gb = bits_of(x, g), eb = bits_of(x >> g, e);
      ASSERT_EQ(eval_plaintext(d, gb, eb), eval_plaintext(c, gb, eb));
    }
  }
  const auto adder = builder_add(16);
  EXPECT_EQ(parse_bristol(write_bristol(adder)).gates().size(), adder.gates().size());
}
