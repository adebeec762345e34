#pragma once

#include <limits>
#include <string>

namespace lanmpc::transport {

// Link characteristics used both for delay injection and for cost prediction.
struct NetworkProfile {
  double rtt_s = 0.0;
  // Bits per second. Infinity means an uncapped link.
  double bandwidth_bps = std::numeric_limits<double>::infinity();
  double per_message_overhead_s = 0.0;

  // Throws std::invalid_argument unless rtt >= 0, bandwidth > 0 and overhead >= 0.
  void validate() const;

  double transfer_seconds(double bytes) const { return bytes * 8.0 / bandwidth_bps; }

  std::string describe() const;

  // 10 GbE through the kernel stack, ping RTT about 800 us.
  static NetworkProfile x710();
  // 200 Gb RDMA NIC, about 1 us one-way.
  static NetworkProfile cx7();
  // Zero latency, uncapped.
  static NetworkProfile ideal();
};

}  // namespace lanmpc::transport
