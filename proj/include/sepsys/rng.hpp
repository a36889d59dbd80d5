#pragma once

#include <cstdint>

namespace sepsys::rng {

// splitmix64: same seed -> same sequence, on every platform. Used by every
// sampled checker so reports are reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), unbiased via rejection.
  uint64_t below(uint64_t n) {
    const uint64_t limit = n * ((~uint64_t{0}) / n);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  uint32_t below32(uint32_t n) { return static_cast<uint32_t>(below(n)); }

 private:
  uint64_t state_;
};

}  // namespace sepsys::rng
