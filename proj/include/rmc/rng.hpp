#ifndef RMC_RNG_HPP
#define RMC_RNG_HPP

#include <cstdint>
#include <random>

#include "rmc/bigint.hpp"

namespace rmc {

// Deterministic seeded generator. mt19937_64 output is pinned by the C++
// standard; uniform draws are done by rejection (std distributions are not
// bit-portable across library implementations).
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t raw() { return eng_(); }

    // uniform in [0, n), n > 0
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        for (;;) {
            uint64_t v = eng_();
            if (v < lim) return v % n;
        }
    }

    // uniform in [0, n), n > 0
    Int below(const Int& n) {
        size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        size_t words = (bits + 63) / 64;
        for (;;) {
            Int v = 0;
            for (size_t i = 0; i < words; i++) {
                v <<= 64;
                v += Int(eng_());
            }
            v >>= (words * 64 - bits);
            if (v < n) return v;
        }
    }

    int64_t range(int64_t lo, int64_t hi) {  // inclusive
        return lo + (int64_t)below((uint64_t)(hi - lo + 1));
    }

    Rng fork() { return Rng(eng_() ^ 0x9e3779b97f4a7c15ull); }

private:
    std::mt19937_64 eng_;
};

} // namespace rmc

#endif
