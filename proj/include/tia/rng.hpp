#pragma once

#include <cstdint>

namespace tia {

// splitmix64-based generator. Streams are identical across platforms and
// standard libraries, which the reproducibility tests rely on; std::
// distributions are implementation-defined and must not be used here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); returns 0 for n == 0.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0)
            return 0;
        std::uint64_t bound = ~0ULL - (~0ULL % n);
        std::uint64_t r;
        do {
            r = next();
        } while (r >= bound);
        return r % n;
    }

    int below_int(int n) { return (int)below((std::uint64_t)(n < 0 ? 0 : n)); }

    double unit() { return (double)(next() >> 11) * (1.0 / 9007199254740992.0); }

    bool chance(double p) { return unit() < p; }

    // Independent child stream; advances this stream once.
    Rng split() { return Rng(next() ^ 0xd1b54a32d192ed03ULL); }

  private:
    std::uint64_t state_;
};

} // namespace tia
