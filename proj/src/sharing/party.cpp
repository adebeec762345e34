#include "lanmpc/sharing/party.hpp"

#include <stdexcept>
#include <string>

namespace lanmpc::sharing {

SsParty::SsParty(int party, transport::Channel& channel, TripleStore& triples, FlushPolicy policy)
    : party_(party), channel_(channel), triples_(triples), policy_(policy) {
  if (party != 0 && party != 1) throw SharingError("party id must be 0 or 1, got " + std::to_string(party));
  if (triples.party() != party) throw SharingError("triple store belongs to the other party");
}

void SsParty::check_owned(std::span<const Share> shares) const {
  for (const Share& s : shares) {
    if (s.party != party_) throw SharingError("share of party " + std::to_string(s.party) + " passed to party " +
                                              std::to_string(party_));
  }
}

std::vector<RingElem> SsParty::exchange(std::span<const RingElem> mine) {
  std::vector<RingElem> theirs(mine.size());
  if (mine.empty()) return theirs;
  if (party_ == 0) {
    transport::send_u64s(channel_, mine);
    channel_.flush();
    transport::recv_u64s(channel_, theirs);
  } else {
    transport::recv_u64s(channel_, theirs);
    transport::send_u64s(channel_, mine);
    channel_.flush();
  }
  return theirs;
}

Share SsParty::mul(const Share& x, const Share& y) { return mul_layer(std::span(&x, 1), std::span(&y, 1)).front(); }

std::vector<Share> SsParty::mul_layer(std::span<const Share> xs, std::span<const Share> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("mul_layer: " + std::to_string(xs.size()) + " left operands, " +
                                std::to_string(ys.size()) + " right operands");
  }
  check_owned(xs);
  check_owned(ys);
  const std::size_t n = xs.size();
  const auto triples = triples_.take(n);
  std::vector<Share> out(n);

  // Opens d_i, e_i for i in [begin, begin+count) and finishes those products.
  std::vector<RingElem> buf;
  auto run = [&](std::size_t begin, std::size_t count) {
    buf.resize(2 * count);
    for (std::size_t i = 0; i < count; ++i) {
      buf[i] = xs[begin + i].value - triples[begin + i].a;
      buf[count + i] = ys[begin + i].value - triples[begin + i].b;
    }
    const auto peer = exchange(buf);
    for (std::size_t i = 0; i < count; ++i) {
      const BeaverTriple& t = triples[begin + i];
      const RingElem d = buf[i] + peer[i];
      const RingElem e = buf[count + i] + peer[count + i];
      RingElem z = t.c + d * t.b + e * t.a;
      if (party_ == 0) z += d * e;
      out[begin + i] = Share{party_, z};
    }
  };

  if (policy_ == FlushPolicy::kEager) {
    for (std::size_t i = 0; i < n; ++i) run(i, 1);
  } else {
    run(0, n);
  }
  return out;
}

std::vector<RingElem> SsParty::open(std::span<const Share> shares) {
  check_owned(shares);
  std::vector<RingElem> mine(shares.size());
  for (std::size_t i = 0; i < shares.size(); ++i) mine[i] = shares[i].value;
  const auto peer = exchange(mine);
  for (std::size_t i = 0; i < mine.size(); ++i) mine[i] += peer[i];
  return mine;
}

std::vector<Share> SsParty::matvec(std::span<const Share> matrix, std::span<const Share> vec, std::size_t rows,
                                   std::size_t cols) {
  if (matrix.size() != rows * cols || vec.size() != cols) {
    throw std::invalid_argument("matvec: shape mismatch");
  }
  std::vector<Share> rhs(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) rhs[r * cols + c] = vec[c];
  }
  const auto products = mul_layer(matrix, rhs);
  std::vector<Share> out(rows, Share{party_, 0});
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[r] = add_local(out[r], products[r * cols + c]);
  }
  return out;
}

std::pair<std::vector<Share>, std::vector<Share>> share_all(std::span<const RingElem> values, crypto::Prg& rng) {
  std::pair<std::vector<Share>, std::vector<Share>> out;
  out.first.reserve(values.size());
  out.second.reserve(values.size());
  for (RingElem v : values) {
    auto [s0, s1] = share(v, rng);
    out.first.push_back(s0);
    out.second.push_back(s1);
  }
  return out;
}

}  // namespace lanmpc::sharing
