#pragma once

#include <cstdint>
#include <random>

#include "cliffkit/exactla/field.hpp"

namespace cliff {

// Seed-threaded randomness.  Bounded draws use rejection on the raw 64-bit
// stream so sequences replay identically across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  uint64_t below(uint64_t n) {
    if (n == 0) throw PreconditionError("Rng::below(0)");
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do v = eng_();
    while (v >= limit);
    return v % n;
  }

  la::Fp uniform(uint32_t p) { return la::Fp::raw(static_cast<uint32_t>(below(p)), p); }
  la::Fp nonzero(uint32_t p) { return la::Fp::raw(static_cast<uint32_t>(1 + below(p - 1)), p); }

  // Independent child stream; the same (seed, stream) pair always yields the
  // same child.
  static uint64_t derive(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace cliff
