#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lanmpc/crypto/prg.hpp"

// Two-party additive secret sharing over Z_{2^64}.
namespace lanmpc::sharing {

using RingElem = std::uint64_t;  // unsigned arithmetic wraps mod 2^64

class SharingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Share {
  int party = 0;  // 0 or 1
  RingElem value = 0;

  friend bool operator==(const Share&, const Share&) = default;
};

// share0 is uniform, share1 = x - share0.
std::pair<Share, Share> share(RingElem x, crypto::Prg& rng);

// Accepts the two shares in either order; throws unless the party ids are {0, 1}.
RingElem reconstruct(const Share& s, const Share& t);

Share add_local(const Share& s, const Share& t);
Share sub_local(const Share& s, const Share& t);
// Only party 0 adds the constant, so the sum shifts by c exactly once.
Share add_const(const Share& s, RingElem c);
Share mul_const(const Share& s, RingElem c);

// One party's view of a triple (a, b, c = a*b).
struct BeaverTriple {
  RingElem a = 0;
  RingElem b = 0;
  RingElem c = 0;

  friend bool operator==(const BeaverTriple&, const BeaverTriple&) = default;
};

// Ordered per-party triple sequence. Both parties consume in the same order;
// running out is an error rather than a reuse.
class TripleStore {
 public:
  TripleStore() = default;
  TripleStore(int party, std::vector<BeaverTriple> triples);

  int party() const { return party_; }
  std::size_t size() const { return triples_.size(); }
  std::size_t consumed() const { return cursor_; }
  std::size_t remaining() const { return triples_.size() - cursor_; }

  // Next n triples; throws SharingError if fewer remain.
  std::span<const BeaverTriple> take(std::size_t n);
  const BeaverTriple& next() { return take(1).front(); }

  std::span<const BeaverTriple> triples() const { return triples_; }

  friend bool operator==(const TripleStore& x, const TripleStore& y) {
    return x.party_ == y.party_ && x.triples_ == y.triples_ && x.cursor_ == y.cursor_;
  }

 private:
  int party_ = 0;
  std::vector<BeaverTriple> triples_;
  std::size_t cursor_ = 0;
};

// Trusted dealer: n triples with uniform a, b, deterministic per seed.
std::pair<TripleStore, TripleStore> dealer_generate(std::size_t n, std::uint64_t seed);

}  // namespace lanmpc::sharing
