#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mrhs {

// splitmix64. Every random choice in the project flows from an explicit
// 64-bit seed through this type; there is no ambient entropy anywhere.
//
// Substreams decouple trial results from execution order: substream k of
// seed s starts from splitmix64_step(s ^ (k+1)*0x9E3779B97F4A7C15), so
// trial k draws the same values no matter which worker runs it.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % n;
        }
    }

    bool one_in(std::uint64_t n) { return below(n) == 0; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

    // Identity permutation of [0, n) shuffled in place.
    std::vector<std::size_t> permutation(std::size_t n) {
        std::vector<std::size_t> p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = i;
        shuffle(p);
        return p;
    }

    static std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
        Rng r(seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
        return r.next();
    }

private:
    std::uint64_t state_;
};

}  // namespace mrhs
