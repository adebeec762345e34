#pragma once

#include <cstdint>
#include <string>

#include "lanmpc/transport/channel.hpp"

namespace lanmpc::transport {

// Parses "host:port". Throws std::invalid_argument on malformed input.
struct SocketAddress {
  std::string host;
  std::uint16_t port = 0;

  static SocketAddress parse(const std::string& text);
};

// Bound, listening TCP socket. Accepts exactly the connections asked for.
class SocketListener {
 public:
  explicit SocketListener(const std::string& address);
  SocketListener(SocketListener&&) noexcept;
  SocketListener& operator=(SocketListener&&) = delete;
  ~SocketListener();

  // The bound port; useful when listening on port 0.
  std::uint16_t port() const { return port_; }

  Channel accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

// Stream-socket channels with Nagle coalescing disabled.
Channel connect_socket(const std::string& address);
Channel listen_socket(const std::string& address);

}  // namespace lanmpc::transport
