#include "lanmpc/sharing/sharing.hpp"

#include <string>

namespace lanmpc::sharing {

namespace {

void check_party(int party) {
  if (party != 0 && party != 1) throw SharingError("party id must be 0 or 1, got " + std::to_string(party));
}

void check_same(const Share& s, const Share& t) {
  if (s.party != t.party) {
    throw SharingError("shares belong to different parties (" + std::to_string(s.party) + " and " +
                       std::to_string(t.party) + ")");
  }
}

}  // namespace

std::pair<Share, Share> share(RingElem x, crypto::Prg& rng) {
  const RingElem r = rng.next_u64();
  return {Share{0, r}, Share{1, x - r}};
}

RingElem reconstruct(const Share& s, const Share& t) {
  check_party(s.party);
  check_party(t.party);
  if (s.party == t.party) throw SharingError("reconstruct needs one share from each party");
  return s.value + t.value;
}

Share add_local(const Share& s, const Share& t) {
  check_same(s, t);
  return {s.party, s.value + t.value};
}

Share sub_local(const Share& s, const Share& t) {
  check_same(s, t);
  return {s.party, s.value - t.value};
}

Share add_const(const Share& s, RingElem c) { return {s.party, s.party == 0 ? s.value + c : s.value}; }

Share mul_const(const Share& s, RingElem c) { return {s.party, s.value * c}; }

TripleStore::TripleStore(int party, std::vector<BeaverTriple> triples) : party_(party), triples_(std::move(triples)) {
  check_party(party);
}

std::span<const BeaverTriple> TripleStore::take(std::size_t n) {
  if (n > remaining()) {
    throw SharingError("triple store exhausted: need " + std::to_string(n) + ", " + std::to_string(remaining()) +
                       " left");
  }
  auto out = std::span<const BeaverTriple>(triples_).subspan(cursor_, n);
  cursor_ += n;
  return out;
}

std::pair<TripleStore, TripleStore> dealer_generate(std::size_t n, std::uint64_t seed) {
  crypto::Prg rng(seed);
  std::vector<BeaverTriple> t0(n), t1(n);
  for (std::size_t i = 0; i < n; ++i) {
    const RingElem a = rng.next_u64();
    const RingElem b = rng.next_u64();
    const RingElem c = a * b;
    const RingElem ra = rng.next_u64();
    const RingElem rb = rng.next_u64();
    const RingElem rc = rng.next_u64();
    t0[i] = {ra, rb, rc};
    t1[i] = {a - ra, b - rb, c - rc};
  }
  return {TripleStore(0, std::move(t0)), TripleStore(1, std::move(t1))};
}

}  // namespace lanmpc::sharing
