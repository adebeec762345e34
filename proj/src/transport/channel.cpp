#include "lanmpc/transport/channel.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lanmpc::transport {

using Clock = std::chrono::steady_clock;

void NetworkProfile::validate() const {
  if (!(rtt_s >= 0.0)) throw std::invalid_argument("network profile: rtt must be >= 0");
  if (!(bandwidth_bps > 0.0)) throw std::invalid_argument("network profile: bandwidth must be > 0");
  if (!(per_message_overhead_s >= 0.0)) {
    throw std::invalid_argument("network profile: per-message overhead must be >= 0");
  }
}

std::string NetworkProfile::describe() const {
  std::ostringstream os;
  os << "rtt=" << rtt_s << "s bw=" << bandwidth_bps << "bps overhead=" << per_message_overhead_s << "s";
  return os.str();
}

NetworkProfile NetworkProfile::x710() { return {800e-6, 10e9, 0.0}; }
NetworkProfile NetworkProfile::cx7() { return {2e-6, 200e9, 0.0}; }
NetworkProfile NetworkProfile::ideal() { return {}; }

ChannelStats operator-(const ChannelStats& after, const ChannelStats& before) {
  return {after.bytes_sent - before.bytes_sent, after.bytes_received - before.bytes_received,
          after.messages_sent - before.messages_sent, after.flushes - before.flushes};
}

// ---------------------------------------------------------------------------
// Channel

Channel::Channel(std::unique_ptr<Link> link, std::optional<NetworkProfile> profile)
    : link_(std::move(link)), profile_(profile) {}

Channel& Channel::operator=(Channel&& other) noexcept {
  if (this != &other) {
    close();
    link_ = std::move(other.link_);
    profile_ = other.profile_;
    buffer_ = std::move(other.buffer_);
    stats_ = other.stats_;
    closed_ = other.closed_;
  }
  return *this;
}

Channel::~Channel() { close(); }

void Channel::ensure_open() const {
  if (!is_open()) throw ChannelClosed("channel is closed");
}

void Channel::send(std::span<const std::byte> bytes) {
  ensure_open();
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::span<std::byte> Channel::append(std::size_t n) {
  ensure_open();
  const std::size_t old = buffer_.size();
  buffer_.resize(old + n);
  return std::span<std::byte>(buffer_).subspan(old, n);
}

void Channel::flush() {
  ensure_open();
  if (buffer_.empty()) return;
  const std::size_t n = buffer_.size();
  std::vector<std::byte> message;
  message.reserve(n);
  message.swap(buffer_);
  link_->deliver(std::move(message));
  stats_.bytes_sent += n;
  stats_.messages_sent += 1;
  stats_.flushes += 1;
}

std::vector<std::byte> Channel::recv(std::size_t n) {
  std::vector<std::byte> out(n);
  recv_into(out);
  return out;
}

void Channel::recv_into(std::span<std::byte> out) {
  if (out.empty()) return;
  ensure_open();
  std::size_t got = 0;
  while (got < out.size()) {
    const std::size_t k = link_->receive_some(out.subspan(got));
    if (k == 0) {
      stats_.bytes_received += got;
      throw ChannelClosed("peer closed the channel after " + std::to_string(got) + " of " +
                          std::to_string(out.size()) + " requested bytes");
    }
    got += k;
  }
  stats_.bytes_received += got;
}

void Channel::close() {
  if (link_ && !closed_) {
    closed_ = true;
    buffer_.clear();
    link_->close();
  }
}

void send_u64s(Channel& ch, std::span<const std::uint64_t> values) {
  auto dst = ch.append(values.size() * 8);
  std::memcpy(dst.data(), values.data(), dst.size());
}

void recv_u64s(Channel& ch, std::span<std::uint64_t> out) {
  ch.recv_into(std::as_writable_bytes(out));
}

// ---------------------------------------------------------------------------
// In-memory backend

namespace {

// One direction of an in-memory pair.
class Pipe {
 public:
  Pipe(std::optional<NetworkProfile> profile, std::size_t window)
      : profile_(profile), window_(window), link_free_(Clock::now()) {}

  void push(std::vector<std::byte>&& data) {
    std::unique_lock lock(mu_);
    if (window_ != 0) {
      not_full_.wait(lock, [&] { return queued_bytes_ < window_ || reader_closed_; });
    }
    if (reader_closed_ || writer_closed_) throw ChannelClosed("peer closed the channel");

    auto visible_at = Clock::now();
    if (profile_) {
      const double tx = profile_->per_message_overhead_s + profile_->transfer_seconds(static_cast<double>(data.size()));
      link_free_ = std::max(link_free_, visible_at) + to_duration(tx);
      visible_at = link_free_ + to_duration(profile_->rtt_s / 2.0);
    }
    queued_bytes_ += data.size();
    queue_.push_back(Message{std::move(data), 0, visible_at});
    not_empty_.notify_one();
  }

  std::size_t pop_some(std::span<std::byte> out) {
    std::unique_lock lock(mu_);
    for (;;) {
      not_empty_.wait(lock, [&] { return !queue_.empty() || writer_closed_ || reader_closed_; });
      if (reader_closed_) return 0;
      if (queue_.empty()) return 0;  // writer closed and drained
      const auto visible_at = queue_.front().visible_at;
      if (Clock::now() >= visible_at) break;
      // Only this reader ever pops, so the front message stays put while we sleep.
      lock.unlock();
      std::this_thread::sleep_until(visible_at);
      lock.lock();
    }
    Message& m = queue_.front();
    const std::size_t k = std::min(out.size(), m.data.size() - m.offset);
    std::memcpy(out.data(), m.data.data() + m.offset, k);
    m.offset += k;
    if (m.offset == m.data.size()) {
      queued_bytes_ -= m.data.size();
      queue_.pop_front();
      not_full_.notify_one();
    }
    return k;
  }

  void close_writer() {
    std::lock_guard lock(mu_);
    writer_closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

  void close_reader() {
    std::lock_guard lock(mu_);
    reader_closed_ = true;
    not_empty_.notify_all();
    not_full_.notify_all();
  }

 private:
  struct Message {
    std::vector<std::byte> data;
    std::size_t offset;
    Clock::time_point visible_at;
  };

  static Clock::duration to_duration(double seconds) {
    return std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
  }

  std::mutex mu_;
  std::condition_variable not_empty_;
  std::condition_variable not_full_;
  std::deque<Message> queue_;
  std::size_t queued_bytes_ = 0;
  bool writer_closed_ = false;
  bool reader_closed_ = false;
  std::optional<NetworkProfile> profile_;
  std::size_t window_;
  Clock::time_point link_free_;
};

class MemoryLink final : public Link {
 public:
  MemoryLink(std::shared_ptr<Pipe> out, std::shared_ptr<Pipe> in) : out_(std::move(out)), in_(std::move(in)) {}
  ~MemoryLink() override { close(); }

  void deliver(std::vector<std::byte>&& message) override { out_->push(std::move(message)); }
  std::size_t receive_some(std::span<std::byte> out) override { return in_->pop_some(out); }

  void close() override {
    if (closed_) return;
    closed_ = true;
    out_->close_writer();
    in_->close_reader();
  }

 private:
  std::shared_ptr<Pipe> out_;
  std::shared_ptr<Pipe> in_;
  bool closed_ = false;
};

}  // namespace

std::pair<Channel, Channel> pair_in_memory(std::optional<NetworkProfile> profile) {
  MemoryPairOptions options;
  options.profile = profile;
  return pair_in_memory(options);
}

std::pair<Channel, Channel> pair_in_memory(const MemoryPairOptions& options) {
  if (options.profile) options.profile->validate();
  auto a_to_b = std::make_shared<Pipe>(options.profile, options.window_bytes);
  auto b_to_a = std::make_shared<Pipe>(options.profile, options.window_bytes);
  Channel a(std::make_unique<MemoryLink>(a_to_b, b_to_a), options.profile);
  Channel b(std::make_unique<MemoryLink>(b_to_a, a_to_b), options.profile);
  return {std::move(a), std::move(b)};
}

}  // namespace lanmpc::transport
