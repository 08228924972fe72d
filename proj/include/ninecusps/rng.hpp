#pragma once

#include <cstdint>

namespace ninecusps {

// SplitMix64. Standard-library distributions are implementation-defined, which
// would break the byte-identical-report contract, so seeded randomness goes
// through this fixed generator everywhere.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish value in [lo, hi]; the tiny modulo bias is irrelevant here,
    // determinism is what matters.
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

}  // namespace ninecusps
