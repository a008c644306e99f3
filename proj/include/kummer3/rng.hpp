#pragma once

#include <cstdint>

namespace kummer3 {

// splitmix64: tiny, portable, deterministic. Every randomized routine takes an
// Rng& (or derives one via fork()) so that a master seed pins the whole run.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n) by rejection; n >= 1
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do { v = next(); } while (v >= lim);
        return v % n;
    }

    // independent child stream; label keeps sibling forks distinct
    Rng fork(std::uint64_t label) {
        std::uint64_t a = next();
        return Rng(a ^ (0x6a09e667f3bcc909ULL * (label + 1)));
    }

  private:
    std::uint64_t s_;
};

} // namespace kummer3
