#include "lanmpc/transport/socket_channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <system_error>

namespace lanmpc::transport {

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
  throw std::system_error(errno, std::generic_category(), what);
}

void set_nodelay(int fd) {
  int one = 1;
  if (::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one)) != 0) throw_errno("setsockopt(TCP_NODELAY)");
}

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) ::freeaddrinfo(head);
  }
};

AddrInfo resolve(const SocketAddress& addr, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  AddrInfo info;
  const std::string port = std::to_string(addr.port);
  const char* host = addr.host.empty() ? nullptr : addr.host.c_str();
  if (int rc = ::getaddrinfo(host, port.c_str(), &hints, &info.head); rc != 0) {
    throw std::runtime_error("cannot resolve " + addr.host + ": " + ::gai_strerror(rc));
  }
  return info;
}

class SocketLink final : public Link {
 public:
  explicit SocketLink(int fd) : fd_(fd) {}
  ~SocketLink() override { close(); }

  void deliver(std::vector<std::byte>&& message) override {
    const std::byte* p = message.data();
    std::size_t left = message.size();
    while (left > 0) {
      const ssize_t n = ::send(fd_, p, left, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        if (errno == EPIPE || errno == ECONNRESET) throw ChannelClosed("peer reset the connection");
        throw_errno("send");
      }
      p += n;
      left -= static_cast<std::size_t>(n);
    }
  }

  std::size_t receive_some(std::span<std::byte> out) override {
    if (fd_ < 0) return 0;
    for (;;) {
      const ssize_t n = ::recv(fd_, out.data(), out.size(), 0);
      if (n >= 0) return static_cast<std::size_t>(n);
      if (errno == EINTR) continue;
      if (errno == ECONNRESET) return 0;
      throw_errno("recv");
    }
  }

  void close() override {
    if (fd_ >= 0) {
      ::shutdown(fd_, SHUT_RDWR);
      ::close(fd_);
      fd_ = -1;
    }
  }

 private:
  int fd_;
};

}  // namespace

SocketAddress SocketAddress::parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon + 1 == text.size()) {
    throw std::invalid_argument("socket address must be host:port, got '" + text + "'");
  }
  SocketAddress addr;
  addr.host = text.substr(0, colon);
  if (addr.host.size() >= 2 && addr.host.front() == '[' && addr.host.back() == ']') {
    addr.host = addr.host.substr(1, addr.host.size() - 2);
  }
  const std::string port = text.substr(colon + 1);
  std::size_t used = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(port, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != port.size() || value > 65535) throw std::invalid_argument("bad port in '" + text + "'");
  addr.port = static_cast<std::uint16_t>(value);
  return addr;
}

SocketListener::SocketListener(const std::string& address) {
  const auto addr = SocketAddress::parse(address);
  const auto info = resolve(addr, true);
  int last_errno = 0;
  for (addrinfo* ai = info.head; ai; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 4) == 0) {
      fd_ = fd;
      break;
    }
    last_errno = errno;
    ::close(fd);
  }
  if (fd_ < 0) {
    errno = last_errno;
    throw_errno("cannot listen on " + address);
  }
  sockaddr_storage bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  if (bound.ss_family == AF_INET) {
    port_ = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
  } else {
    port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);
  }
}

SocketListener::SocketListener(SocketListener&& other) noexcept : fd_(other.fd_), port_(other.port_) {
  other.fd_ = -1;
}

SocketListener::~SocketListener() {
  if (fd_ >= 0) ::close(fd_);
}

Channel SocketListener::accept() {
  int fd;
  do {
    fd = ::accept(fd_, nullptr, nullptr);
  } while (fd < 0 && errno == EINTR);
  if (fd < 0) throw_errno("accept");
  set_nodelay(fd);
  return Channel(std::make_unique<SocketLink>(fd));
}

Channel connect_socket(const std::string& address) {
  const auto addr = SocketAddress::parse(address);
  const auto info = resolve(addr, false);
  int last_errno = 0;
  for (addrinfo* ai = info.head; ai; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      set_nodelay(fd);
      return Channel(std::make_unique<SocketLink>(fd));
    }
    last_errno = errno;
    ::close(fd);
  }
  errno = last_errno;
  throw_errno("cannot connect to " + address);
}

Channel listen_socket(const std::string& address) { return SocketListener(address).accept(); }

}  // namespace lanmpc::transport
