#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lanmpc/sharing/sharing.hpp"
#include "lanmpc/transport/channel.hpp"

namespace lanmpc::sharing {

enum class FlushPolicy {
  // Every multiplication opens, flushes and waits for the peer before the next one starts.
  kEager,
  // All openings of an independent layer travel in one message per party.
  kBatched,
};

// One party's online phase. Openings are exchanged in a fixed order: party 0
// sends and then waits, party 1 waits and then answers. Each exchange is
// therefore one full round trip, and neither side ever blocks on a send while
// the other is also sending.
//
// Opening message layout: little-endian 8-byte ring elements, all d-values of
// the layer, then all e-values. No framing.
class SsParty {
 public:
  SsParty(int party, transport::Channel& channel, TripleStore& triples, FlushPolicy policy);

  int party() const { return party_; }
  FlushPolicy policy() const { return policy_; }
  transport::Channel& channel() { return channel_; }

  // Beaver multiplication of one pair.
  Share mul(const Share& x, const Share& y);

  // Independent multiplications; xs and ys must have equal length.
  std::vector<Share> mul_layer(std::span<const Share> xs, std::span<const Share> ys);

  // Reveals the listed values to both parties in one exchange. Empty input sends nothing.
  std::vector<RingElem> open(std::span<const Share> shares);

  // out[r] = sum_c M[r*cols + c] * v[c]: one layer of rows*cols products, then local sums.
  std::vector<Share> matvec(std::span<const Share> matrix, std::span<const Share> vec, std::size_t rows,
                            std::size_t cols);

 private:
  std::vector<RingElem> exchange(std::span<const RingElem> mine);
  void check_owned(std::span<const Share> shares) const;

  int party_;
  transport::Channel& channel_;
  TripleStore& triples_;
  FlushPolicy policy_;
};

// Shares every element of values; returns (party 0 shares, party 1 shares).
std::pair<std::vector<Share>, std::vector<Share>> share_all(std::span<const RingElem> values, crypto::Prg& rng);

}  // namespace lanmpc::sharing
