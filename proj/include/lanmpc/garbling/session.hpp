#pragma once

#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "lanmpc/circuit/circuit.hpp"
#include "lanmpc/crypto/prg.hpp"
#include "lanmpc/garbling/half_gates.hpp"
#include "lanmpc/transport/channel.hpp"

namespace lanmpc::garbling {

inline constexpr std::size_t kDefaultFlushBytes = std::size_t{64} << 10;

// How the evaluator obtains the labels for its own input bits.
enum class InputMode {
  // INSECURE, benchmark only: the evaluator sends its input bits in the clear
  // and the garbler answers with the active labels.
  kDirect,
  // Labels arrive through a caller-supplied InputLabelDelivery, e.g. an
  // oblivious-transfer component. Nothing flows evaluator -> garbler.
  kExternal,
};

// Out-of-band delivery of the evaluator's input labels.
class InputLabelDelivery {
 public:
  virtual ~InputLabelDelivery() = default;
  // Garbler side: the false labels of the evaluator's inputs and the global offset.
  virtual void send_labels(std::span<const Block> false_labels, const Block& delta) = 0;
  // Evaluator side: one active label per input bit.
  virtual std::vector<Block> receive_labels(std::span<const std::uint8_t> bits) = 0;
};

// In-process stand-in for oblivious transfer. It hands the evaluator exactly
// the labels it is entitled to, but it sees both parties' secrets, so it
// offers no security. Tests and benchmarks only.
class LocalLabelDelivery final : public InputLabelDelivery {
 public:
  void send_labels(std::span<const Block> false_labels, const Block& delta) override;
  std::vector<Block> receive_labels(std::span<const std::uint8_t> bits) override;

 private:
  std::mutex mu_;
  std::condition_variable ready_;
  std::optional<std::vector<Block>> false_labels_;
  Block delta_;
};

struct GarblerOptions {
  std::uint64_t seed = 0;
  std::size_t flush_bytes = kDefaultFlushBytes;
};

// Garbler side of a streamed half-gates execution. Acts as a gate backend
// (Wire = false label) so circuit code can drive it directly; AND tables go
// to the channel in gate order and are flushed every flush_bytes.
class Garbler {
 public:
  using Wire = Block;

  Garbler(transport::Channel& channel, const GarblerOptions& options);

  const Block& delta() const { return delta_; }
  std::uint64_t and_count() const { return next_gate_; }
  transport::Channel& channel() { return channel_; }

  // Samples false labels for the garbler's input bits and sends the active ones (16 bytes each).
  std::vector<Block> input_garbler(std::span<const std::uint8_t> bits);
  // Samples false labels for n evaluator input bits and delivers the active ones.
  std::vector<Block> input_evaluator(std::size_t n, InputMode mode, InputLabelDelivery* delivery = nullptr);

  Block xor_gate(const Block& a, const Block& b) const { return garble_xor(a, b); }
  Block inv_gate(const Block& a) const { return a ^ delta_; }
  Block and_gate(const Block& a, const Block& b);
  void and_many(std::span<const Block> a, std::span<const Block> b, std::span<Block> out);

  // Sends one decode bit (lsb of the false label) per output, packed LSB-first, and flushes.
  void reveal(std::span<const Block> outputs);

  void flush() { channel_.flush(); }

 private:
  void maybe_flush();
  void send_active(std::span<const Block> false_labels, std::span<const std::uint8_t> bits);

  transport::Channel& channel_;
  crypto::Prg prg_;
  Block delta_;
  std::size_t flush_bytes_;
  std::uint64_t next_gate_ = 0;
};

// Evaluator side. Wire = active label.
class Evaluator {
 public:
  using Wire = Block;

  explicit Evaluator(transport::Channel& channel);

  std::uint64_t and_count() const { return next_gate_; }
  transport::Channel& channel() { return channel_; }

  std::vector<Block> input_garbler(std::size_t n);
  std::vector<Block> input_evaluator(std::span<const std::uint8_t> bits, InputMode mode,
                                     InputLabelDelivery* delivery = nullptr);

  Block xor_gate(const Block& a, const Block& b) const { return eval_xor(a, b); }
  Block inv_gate(const Block& a) const { return a; }
  Block and_gate(const Block& a, const Block& b);
  void and_many(std::span<const Block> a, std::span<const Block> b, std::span<Block> out);

  circuit::Bits reveal(std::span<const Block> outputs);

 private:
  transport::Channel& channel_;
  std::vector<std::byte> scratch_;
  std::uint64_t next_gate_ = 0;
};

// One-gate-at-a-time interface reached through virtual calls. Kept as a
// comparison path: batched execution through the concrete Garbler/Evaluator
// is the default.
class GateSink {
 public:
  virtual ~GateSink() = default;
  virtual Block xor_gate(const Block& a, const Block& b) = 0;
  virtual Block and_gate(const Block& a, const Block& b) = 0;
  virtual Block inv_gate(const Block& a) = 0;
};

std::unique_ptr<GateSink> make_gate_sink(Garbler& garbler);
std::unique_ptr<GateSink> make_gate_sink(Evaluator& evaluator);

// Gate backend that forwards every gate, batched or not, through a GateSink.
class PerGateBackend {
 public:
  using Wire = Block;

  explicit PerGateBackend(GateSink& sink) : sink_(&sink) {}

  Block xor_gate(const Block& a, const Block& b) { return sink_->xor_gate(a, b); }
  Block and_gate(const Block& a, const Block& b) { return sink_->and_gate(a, b); }
  Block inv_gate(const Block& a) { return sink_->inv_gate(a); }
  void and_many(std::span<const Block> a, std::span<const Block> b, std::span<Block> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = sink_->and_gate(a[i], b[i]);
  }

 private:
  GateSink* sink_;
};

}  // namespace lanmpc::garbling
