#include "lanmpc/garbling/session.hpp"

#include <algorithm>
#include <stdexcept>

namespace lanmpc::garbling {

using circuit::Bits;
using crypto::select;

namespace {

// Gates per batched call: enough to keep the AES pipeline full, small enough
// that flushes stay close to the configured threshold.
std::size_t batch_gates(std::size_t flush_bytes) {
  return std::clamp<std::size_t>(flush_bytes / GarbledAndTable::kBytes, 1, 4096);
}

}  // namespace

void LocalLabelDelivery::send_labels(std::span<const Block> false_labels, const Block& delta) {
  std::lock_guard lock(mu_);
  false_labels_.emplace(false_labels.begin(), false_labels.end());
  delta_ = delta;
  ready_.notify_all();
}

std::vector<Block> LocalLabelDelivery::receive_labels(std::span<const std::uint8_t> bits) {
  std::unique_lock lock(mu_);
  ready_.wait(lock, [&] { return false_labels_.has_value(); });
  if (false_labels_->size() != bits.size()) {
    throw std::invalid_argument("label delivery: evaluator asked for " + std::to_string(bits.size()) +
                                " labels, garbler provided " + std::to_string(false_labels_->size()));
  }
  std::vector<Block> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = (*false_labels_)[i] ^ select(bits[i] != 0, delta_);
  false_labels_.reset();
  return out;
}

// ---------------------------------------------------------------------------
// Garbler

Garbler::Garbler(transport::Channel& channel, const GarblerOptions& options)
    : channel_(channel), prg_(options.seed), flush_bytes_(std::max<std::size_t>(options.flush_bytes, 1)) {
  delta_ = prg_.next_block();
  delta_.lo |= 1;
}

void Garbler::maybe_flush() {
  if (channel_.pending_bytes() >= flush_bytes_) channel_.flush();
}

std::vector<Block> Garbler::input_garbler(std::span<const std::uint8_t> bits) {
  std::vector<Block> labels(bits.size());
  prg_.fill(labels);
  send_active(labels, bits);
  return labels;
}

std::vector<Block> Garbler::input_evaluator(std::size_t n, InputMode mode, InputLabelDelivery* delivery) {
  std::vector<Block> labels(n);
  prg_.fill(labels);
  if (mode == InputMode::kExternal) {
    if (delivery == nullptr) throw std::invalid_argument("external input mode requires a label delivery");
    delivery->send_labels(labels, delta_);
    return labels;
  }
  // The evaluator may be waiting on earlier labels before it sends its bits.
  channel_.flush();
  std::vector<std::uint8_t> packed((n + 7) / 8);
  channel_.recv_into(std::as_writable_bytes(std::span(packed)));
  send_active(labels, circuit::unpack_bits(packed, n));
  return labels;
}

// Streams active labels in flush-sized pieces so large inputs never sit in one buffer.
void Garbler::send_active(std::span<const Block> false_labels, std::span<const std::uint8_t> bits) {
  const std::size_t chunk = std::max<std::size_t>(flush_bytes_ / 16, 1);
  for (std::size_t base = 0; base < bits.size(); base += chunk) {
    const std::size_t n = std::min(chunk, bits.size() - base);
    auto out = channel_.append(16 * n);
    for (std::size_t i = 0; i < n; ++i) {
      (false_labels[base + i] ^ select(bits[base + i] != 0, delta_)).store(out.data() + 16 * i);
    }
    maybe_flush();
  }
}

Block Garbler::and_gate(const Block& a, const Block& b) {
  const auto [table, c0] = garble_and(a, b, delta_, next_gate_++);
  table.store(channel_.append(GarbledAndTable::kBytes).data());
  maybe_flush();
  return c0;
}

void Garbler::and_many(std::span<const Block> a, std::span<const Block> b, std::span<Block> out) {
  const std::size_t chunk = batch_gates(flush_bytes_);
  for (std::size_t base = 0; base < a.size(); base += chunk) {
    const std::size_t n = std::min(chunk, a.size() - base);
    auto tables = channel_.append(n * GarbledAndTable::kBytes);
    garble_and_batch(a.subspan(base, n), b.subspan(base, n), delta_, next_gate_, tables, out.subspan(base, n));
    next_gate_ += n;
    maybe_flush();
  }
}

void Garbler::reveal(std::span<const Block> outputs) {
  Bits decode(outputs.size());
  for (std::size_t i = 0; i < outputs.size(); ++i) decode[i] = outputs[i].lsb();
  const auto packed = circuit::pack_bits(decode);
  channel_.send(std::as_bytes(std::span(packed)));
  channel_.flush();
}

// ---------------------------------------------------------------------------
// Evaluator

Evaluator::Evaluator(transport::Channel& channel) : channel_(channel) {}

std::vector<Block> Evaluator::input_garbler(std::size_t n) {
  std::vector<Block> labels(n);
  channel_.recv_into(std::as_writable_bytes(std::span(labels)));
  return labels;
}

std::vector<Block> Evaluator::input_evaluator(std::span<const std::uint8_t> bits, InputMode mode,
                                              InputLabelDelivery* delivery) {
  if (mode == InputMode::kExternal) {
    if (delivery == nullptr) throw std::invalid_argument("external input mode requires a label delivery");
    return delivery->receive_labels(bits);
  }
  const auto packed = circuit::pack_bits(bits);
  channel_.send(std::as_bytes(std::span(packed)));
  channel_.flush();
  std::vector<Block> labels(bits.size());
  channel_.recv_into(std::as_writable_bytes(std::span(labels)));
  return labels;
}

Block Evaluator::and_gate(const Block& a, const Block& b) {
  std::byte buf[GarbledAndTable::kBytes];
  channel_.recv_into(buf);
  return eval_and(a, b, GarbledAndTable::load(buf), next_gate_++);
}

void Evaluator::and_many(std::span<const Block> a, std::span<const Block> b, std::span<Block> out) {
  constexpr std::size_t kChunk = 2048;
  scratch_.resize(std::min(kChunk, a.size()) * GarbledAndTable::kBytes);
  for (std::size_t base = 0; base < a.size(); base += kChunk) {
    const std::size_t n = std::min(kChunk, a.size() - base);
    auto tables = std::span(scratch_).first(n * GarbledAndTable::kBytes);
    channel_.recv_into(tables);
    eval_and_batch(a.subspan(base, n), b.subspan(base, n), tables, next_gate_, out.subspan(base, n));
    next_gate_ += n;
  }
}

Bits Evaluator::reveal(std::span<const Block> outputs) {
  std::vector<std::uint8_t> packed((outputs.size() + 7) / 8);
  channel_.recv_into(std::as_writable_bytes(std::span(packed)));
  Bits bits = circuit::unpack_bits(packed, outputs.size());
  for (std::size_t i = 0; i < outputs.size(); ++i) bits[i] ^= static_cast<std::uint8_t>(outputs[i].lsb());
  return bits;
}

// ---------------------------------------------------------------------------
// Per-gate sinks

namespace {

class GarblerSink final : public GateSink {
 public:
  explicit GarblerSink(Garbler& g) : g_(g) {}
  Block xor_gate(const Block& a, const Block& b) override { return g_.xor_gate(a, b); }
  Block and_gate(const Block& a, const Block& b) override { return g_.and_gate(a, b); }
  Block inv_gate(const Block& a) override { return g_.inv_gate(a); }

 private:
  Garbler& g_;
};

class EvaluatorSink final : public GateSink {
 public:
  explicit EvaluatorSink(Evaluator& e) : e_(e) {}
  Block xor_gate(const Block& a, const Block& b) override { return e_.xor_gate(a, b); }
  Block and_gate(const Block& a, const Block& b) override { return e_.and_gate(a, b); }
  Block inv_gate(const Block& a) override { return e_.inv_gate(a); }

 private:
  Evaluator& e_;
};

}  // namespace

std::unique_ptr<GateSink> make_gate_sink(Garbler& garbler) { return std::make_unique<GarblerSink>(garbler); }
std::unique_ptr<GateSink> make_gate_sink(Evaluator& evaluator) { return std::make_unique<EvaluatorSink>(evaluator); }

}  // namespace lanmpc::garbling
