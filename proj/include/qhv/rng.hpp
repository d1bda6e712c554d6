#pragma once

#include <cstdint>

namespace qhv {

// splitmix64; stable across platforms so seeded reports are bit-identical
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next() {
        s_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n) by rejection
    std::uint64_t bounded(std::uint64_t n) {
        std::uint64_t lim = ~0ull - ~0ull % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= lim);
        return v % n;
    }

  private:
    std::uint64_t s_;
};

}  // namespace qhv
