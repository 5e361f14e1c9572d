/* prng.hpp -- deterministic 64-bit linear congruential generator */

#ifndef PRODCHECK_PRNG_HPP_
#define PRODCHECK_PRNG_HPP_

#include <cstdint>

namespace prodcheck {

/// 64-bit LCG, state' = state * 6364136223846793005 + 1442695040888963407
/// (Knuth's MMIX constants). Chosen over std::mt19937 so that seeded corpora
/// can be reproduced bit-for-bit by other implementations of the same tool.
class Lcg64 {
public:
    explicit Lcg64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

    /// Uniform-ish draw in [0, n) via the multiply-shift reduction.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    bool chance(uint64_t num, uint64_t den) { return below(den) < num; }

private:
    uint64_t state_;
};

} // namespace prodcheck

#endif // PRODCHECK_PRNG_HPP_
