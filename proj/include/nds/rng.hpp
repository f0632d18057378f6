#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string_view>

namespace nds {

// splitmix64 finalizer; good avalanche, used for seed derivation and
// deterministic hashing of (seed, index) style tuples.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

// FNV-1a over bytes. std::hash is not pinned across standard libraries,
// and pool hashing must be stable across builds.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Seeded generator used everywhere sampling happens. The engine is
// std::mt19937_64, whose output sequence the standard pins exactly; the
// integer and real draws are done here rather than through the standard
// distributions, which are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }

    // Unbiased draw from {0, ..., n-1} by rejection.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::uniform_index: n must be positive");
        if (n == 1) return 0;
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % n;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x < limit) return x % n;
        }
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Independent stream derived from (seed, stream); unaffected by and not
    // affecting this generator's draw state. Lets callers fan work out to
    // threads or trial indices while keeping results schedule-independent.
    Rng child(std::uint64_t stream) const { return Rng(mix64(seed_, stream)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace nds
