#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "lanmpc/circuit/circuit.hpp"

// Integer arithmetic written once against an abstract gate backend. The same
// code records circuits, counts gates, evaluates in the clear, and drives the
// garbler and evaluator directly. Gate emission order is part of the contract:
// every backend sees the identical sequence, so transcripts line up.
namespace lanmpc::circuit {

template <class B>
concept GateBackend = requires(B& b, const typename B::Wire& w, std::span<const typename B::Wire> in,
                               std::span<typename B::Wire> out) {
  { b.xor_gate(w, w) } -> std::convertible_to<typename B::Wire>;
  { b.and_gate(w, w) } -> std::convertible_to<typename B::Wire>;
  { b.inv_gate(w) } -> std::convertible_to<typename B::Wire>;
  b.and_many(in, in, out);
};

// Little-endian bits of one integer.
template <class W>
using Word = std::vector<W>;

// Lane-wise wrap-around addition of equal-width words. Ripple carry with one
// AND per carry: an n-bit add costs n-1 ANDs. All lanes advance one bit
// position together so each carry step is a single batched AND call.
template <GateBackend B>
std::vector<Word<typename B::Wire>> add_lanes(B& b, std::span<const Word<typename B::Wire>> xs,
                                              std::span<const Word<typename B::Wire>> ys) {
  using W = typename B::Wire;
  const std::size_t lanes = xs.size();
  std::vector<Word<W>> sums(lanes);
  if (lanes == 0) return sums;
  const std::size_t n = xs[0].size();
  for (auto& s : sums) s.resize(n);
  if (n == 0) return sums;

  std::vector<W> carry(lanes), lhs(lanes), rhs(lanes), prod(lanes);
  for (std::size_t l = 0; l < lanes; ++l) sums[l][0] = b.xor_gate(xs[l][0], ys[l][0]);
  if (n == 1) return sums;
  for (std::size_t l = 0; l < lanes; ++l) {
    lhs[l] = xs[l][0];
    rhs[l] = ys[l][0];
  }
  b.and_many(std::span<const W>(lhs), std::span<const W>(rhs), std::span<W>(carry));

  for (std::size_t k = 1; k + 1 < n; ++k) {
    for (std::size_t l = 0; l < lanes; ++l) {
      lhs[l] = b.xor_gate(xs[l][k], carry[l]);
      rhs[l] = b.xor_gate(ys[l][k], carry[l]);
      sums[l][k] = b.xor_gate(lhs[l], ys[l][k]);
    }
    b.and_many(std::span<const W>(lhs), std::span<const W>(rhs), std::span<W>(prod));
    for (std::size_t l = 0; l < lanes; ++l) carry[l] = b.xor_gate(prod[l], carry[l]);
  }
  for (std::size_t l = 0; l < lanes; ++l) {
    sums[l][n - 1] = b.xor_gate(b.xor_gate(xs[l][n - 1], ys[l][n - 1]), carry[l]);
  }
  return sums;
}

// Lane-wise schoolbook multiplication truncated to the word width:
// w(w+1)/2 partial-product ANDs plus a shrinking add per row, w^2 - w + 1 ANDs total.
template <GateBackend B>
std::vector<Word<typename B::Wire>> mul_lanes(B& b, std::span<const Word<typename B::Wire>> xs,
                                              std::span<const Word<typename B::Wire>> ys) {
  using W = typename B::Wire;
  const std::size_t lanes = xs.size();
  std::vector<Word<W>> acc(lanes);
  if (lanes == 0) return acc;
  const std::size_t w = xs[0].size();
  if (w == 0) return acc;

  // Partial products x_j & y_i for i + j < w, all lanes in one batch.
  const std::size_t per_lane = w * (w + 1) / 2;
  std::vector<W> lhs, rhs, pp(per_lane * lanes);
  lhs.reserve(pp.size());
  rhs.reserve(pp.size());
  for (std::size_t l = 0; l < lanes; ++l) {
    for (std::size_t i = 0; i < w; ++i) {
      for (std::size_t j = 0; j + i < w; ++j) {
        lhs.push_back(xs[l][j]);
        rhs.push_back(ys[l][i]);
      }
    }
  }
  b.and_many(std::span<const W>(lhs), std::span<const W>(rhs), std::span<W>(pp));

  // Row i holds w-i bits and follows rows 0..i-1 of the same lane.
  auto row_at = [&](std::size_t l, std::size_t i) {
    const std::size_t offset = l * per_lane + i * w - i * (i - 1) / 2;
    return std::span<const W>(pp).subspan(offset, w - i);
  };
  for (std::size_t l = 0; l < lanes; ++l) {
    auto row0 = row_at(l, 0);
    acc[l].assign(row0.begin(), row0.end());
  }
  std::vector<Word<W>> hi(lanes), row(lanes);
  for (std::size_t i = 1; i < w; ++i) {
    for (std::size_t l = 0; l < lanes; ++l) {
      hi[l].assign(acc[l].begin() + static_cast<std::ptrdiff_t>(i), acc[l].end());
      auto r = row_at(l, i);
      row[l].assign(r.begin(), r.end());
    }
    auto sums = add_lanes(b, std::span<const Word<W>>(hi), std::span<const Word<W>>(row));
    for (std::size_t l = 0; l < lanes; ++l) std::copy(sums[l].begin(), sums[l].end(), acc[l].begin() + static_cast<std::ptrdiff_t>(i));
  }
  return acc;
}

// Sums the words with a balanced pairwise tree: n words cost n-1 adds.
template <GateBackend B>
Word<typename B::Wire> sum_tree(B& b, std::vector<Word<typename B::Wire>> words) {
  using W = typename B::Wire;
  while (words.size() > 1) {
    const std::size_t pairs = words.size() / 2;
    std::vector<Word<W>> left(pairs), right(pairs);
    for (std::size_t p = 0; p < pairs; ++p) {
      left[p] = std::move(words[2 * p]);
      right[p] = std::move(words[2 * p + 1]);
    }
    auto sums = add_lanes(b, std::span<const Word<W>>(left), std::span<const Word<W>>(right));
    if (words.size() % 2 == 1) sums.push_back(std::move(words.back()));
    words = std::move(sums);
  }
  return words.empty() ? Word<W>{} : std::move(words.front());
}

// Inner product of one matrix row with the vector: all products as one lane
// batch, then a sum tree.
template <GateBackend B>
Word<typename B::Wire> matvec_row(B& b, std::span<const Word<typename B::Wire>> row,
                                  std::span<const Word<typename B::Wire>> vec) {
  return sum_tree(b, mul_lanes(b, row, vec));
}

// out[r] = sum_c matrix[r*cols + c] * vec[c], row by row.
template <GateBackend B>
std::vector<Word<typename B::Wire>> matvec(B& b, std::span<const Word<typename B::Wire>> matrix,
                                           std::span<const Word<typename B::Wire>> vec, std::size_t rows,
                                           std::size_t cols) {
  std::vector<Word<typename B::Wire>> out;
  out.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) out.push_back(matvec_row(b, matrix.subspan(r * cols, cols), vec));
  return out;
}

// ---------------------------------------------------------------------------
// Backends that need no cryptography.

// Appends gates to a circuit under construction. Garbler inputs occupy
// [0, G), evaluator inputs [G, G+E), gate outputs follow in emission order.
class CircuitRecorder {
 public:
  using Wire = WireId;

  CircuitRecorder(std::uint64_t garbler_inputs, std::uint64_t evaluator_inputs);

  Wire garbler_wire(std::uint64_t i) const { return static_cast<Wire>(i); }
  Wire evaluator_wire(std::uint64_t i) const { return static_cast<Wire>(garbler_count_ + i); }

  Wire xor_gate(Wire a, Wire b) { return emit(GateKind::kXor, a, b); }
  Wire and_gate(Wire a, Wire b) { return emit(GateKind::kAnd, a, b); }
  Wire inv_gate(Wire a) { return emit(GateKind::kInv, a, a); }
  void and_many(std::span<const Wire> a, std::span<const Wire> b, std::span<Wire> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = and_gate(a[i], b[i]);
  }

  BooleanCircuit finish(std::vector<WireId> outputs) &&;

 private:
  Wire emit(GateKind kind, Wire a, Wire b);

  WireId garbler_count_;
  WireId evaluator_count_;
  std::uint64_t next_;
  std::vector<Gate> gates_;
};

// Counts gates and tracks AND depth without storing anything.
class GateCounter {
 public:
  using Wire = std::uint32_t;  // AND depth of the wire

  Wire xor_gate(Wire a, Wire b) {
    ++stats_.xor_count;
    return std::max(a, b);
  }
  Wire and_gate(Wire a, Wire b) {
    ++stats_.and_count;
    const Wire d = std::max(a, b) + 1;
    stats_.and_depth = std::max<std::uint64_t>(stats_.and_depth, d);
    return d;
  }
  Wire inv_gate(Wire a) {
    ++stats_.inv_count;
    return a;
  }
  void and_many(std::span<const Wire> a, std::span<const Wire> b, std::span<Wire> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = and_gate(a[i], b[i]);
  }

  const CircuitStats& stats() const { return stats_; }

 private:
  CircuitStats stats_;
};

// Evaluates in the clear, one byte per bit.
struct PlainBackend {
  using Wire = std::uint8_t;

  Wire xor_gate(Wire a, Wire b) const { return a ^ b; }
  Wire and_gate(Wire a, Wire b) const { return a & b; }
  Wire inv_gate(Wire a) const { return a ^ 1; }
  void and_many(std::span<const Wire> a, std::span<const Wire> b, std::span<Wire> out) const {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  }
};

static_assert(GateBackend<CircuitRecorder>);
static_assert(GateBackend<GateCounter>);
static_assert(GateBackend<PlainBackend>);

}  // namespace lanmpc::circuit
