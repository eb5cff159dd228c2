#pragma once
#include <array>
#include <cstdint>
#include <stdexcept>

namespace fairband {

// Deterministic xoshiro256** generator, seeded through splitmix64.
// We do not use <random> engines or distributions for simulation draws:
// their stream is pinned here so that traces are byte-identical across
// platforms and standard-library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t x = seed;
        for (auto& s : state_) s = splitmix64(x);
    }

    // Substream for trial `stream` of a master seed. Trials drawn this way are
    // order-independent: trial i's stream does not depend on trials < i.
    static Rng substream(std::uint64_t master_seed, std::uint64_t stream) {
        std::uint64_t x = master_seed;
        std::uint64_t a = splitmix64(x);
        // fold the stream index through a second splitmix pass
        std::uint64_t y = a ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        return Rng(splitmix64(y));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller (one value per call; the pair's second
    // half is discarded to keep the draw count context-free).
    double normal();

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_{};
};

}  // namespace fairband
