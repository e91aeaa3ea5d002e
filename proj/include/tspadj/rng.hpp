#pragma once

#include <cstdint>
#include <vector>

namespace tspadj {

// Small deterministic PRNG (splitmix64). Every randomized component takes one
// of these so that a run is reproducible from a single 64-bit seed regardless
// of platform or standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t x = (state_ += 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, bound), bound > 0. Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    int index(std::size_t size) { return static_cast<int>(below(static_cast<std::uint64_t>(size))); }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin() { return (next() & 1) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent stream for a sub-task; mixing keeps streams decorrelated
    // even for adjacent indexes.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL));
        r.next();
        return r.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace tspadj
