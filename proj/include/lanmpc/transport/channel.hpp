#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lanmpc/transport/network_profile.hpp"

namespace lanmpc::transport {

// Raised when the peer is gone or the local endpoint was closed.
class ChannelClosed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChannelStats {
  std::uint64_t bytes_sent = 0;
  std::uint64_t bytes_received = 0;
  std::uint64_t messages_sent = 0;
  // Flushes that carried at least one byte. Protocols treat these as round boundaries.
  std::uint64_t flushes = 0;

  friend bool operator==(const ChannelStats&, const ChannelStats&) = default;
};

ChannelStats operator-(const ChannelStats& after, const ChannelStats& before);

// Backend that moves flushed messages to the peer. A message is always one
// contiguous buffer; the backend never sees partial writes.
class Link {
 public:
  virtual ~Link() = default;

  // Hands one flushed message to the peer. Throws ChannelClosed if the peer is gone.
  virtual void deliver(std::vector<std::byte>&& message) = 0;

  // Blocks until at least one byte is available and copies up to out.size()
  // bytes. Returns 0 only when the peer has closed and nothing is left.
  virtual std::size_t receive_some(std::span<std::byte> out) = 0;

  virtual void close() = 0;
};

// One endpoint of a duplex, ordered, reliable byte stream. Bytes written with
// send() are buffered locally and handed to the backend on flush(). There is
// no framing: the receiver must know how many bytes to ask for.
//
// send/flush must be driven by one thread and recv by one thread; the two
// endpoints of a pair may live on different threads.
class Channel {
 public:
  Channel() = default;
  explicit Channel(std::unique_ptr<Link> link, std::optional<NetworkProfile> profile = std::nullopt);
  Channel(Channel&&) noexcept = default;
  Channel& operator=(Channel&&) noexcept;
  ~Channel();

  Channel(const Channel&) = delete;
  Channel& operator=(const Channel&) = delete;

  void send(std::span<const std::byte> bytes);

  // Grows the send buffer by n bytes and returns the new region for the caller to fill.
  std::span<std::byte> append(std::size_t n);

  void flush();

  std::vector<std::byte> recv(std::size_t n);
  void recv_into(std::span<std::byte> out);

  // Discards unflushed bytes. The peer sees end-of-stream once it drains what was flushed.
  void close();

  bool is_open() const { return link_ != nullptr && !closed_; }
  std::size_t pending_bytes() const { return buffer_.size(); }
  const ChannelStats& stats() const { return stats_; }
  const std::optional<NetworkProfile>& profile() const { return profile_; }

 private:
  void ensure_open() const;

  std::unique_ptr<Link> link_;
  std::optional<NetworkProfile> profile_;
  std::vector<std::byte> buffer_;
  ChannelStats stats_;
  bool closed_ = false;
};

struct MemoryPairOptions {
  std::optional<NetworkProfile> profile;
  // Upper bound on bytes queued in one direction before flush() blocks.
  // A single message larger than the window is still accepted into an empty
  // queue. Zero disables the bound.
  std::size_t window_bytes = std::size_t{4} << 20;
};

// Two connected in-process endpoints. With a profile, each flushed message of
// B bytes becomes readable no earlier than
//   max(flush time, link free) + per_message_overhead + 8B/bandwidth + rtt/2,
// enforced by real waiting.
std::pair<Channel, Channel> pair_in_memory(std::optional<NetworkProfile> profile = std::nullopt);
std::pair<Channel, Channel> pair_in_memory(const MemoryPairOptions& options);

// Convenience wrappers over Channel for fixed-width little-endian integers.
void send_u64s(Channel& ch, std::span<const std::uint64_t> values);
void recv_u64s(Channel& ch, std::span<std::uint64_t> out);

}  // namespace lanmpc::transport
