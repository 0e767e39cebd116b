#pragma once

#include <cstdint>

#include "qpv/rational.hpp"

namespace qpv {

// splitmix64: tiny, deterministic across platforms, good enough for picking
// sample points and random test instances.  Not for anything cryptographic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool flip() { return (next() & 1) != 0; }

  // Small rational p/q, 1 <= |p| <= 7, 1 <= q <= 7.  Nonzero.
  Rat small_nonzero() {
    int p = range(1, 7);
    if (flip()) p = -p;
    int q = range(1, 7);
    return Rat(p, q);
  }

  // Small rational, possibly zero.
  Rat small() {
    if (below(4) == 0) return Rat(0);
    return small_nonzero();
  }

 private:
  std::uint64_t s_;
};

}  // namespace qpv
