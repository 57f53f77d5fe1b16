#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace rainbow {

// splitmix64 step; used to derive per-module sub-stream seeds so that a
// change in one component does not reshuffle the randomness of another.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = splitmix64(seed);
    for (char c : tag)
        h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    return h;
}

// Seeded generator wrapper. mt19937_64 output is pinned by the standard and
// all draws below avoid std::uniform_*_distribution (whose mapping is
// implementation-defined), so identical seeds give identical streams on any
// platform. This is what makes reports byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // uniform double in [0, 1), 53 random bits
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // uniform integer in [0, bound), bound >= 1; rejection sampling
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    int uniform_int(int lo, int hi) { // inclusive range
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    Rng fork(std::string_view tag) { return Rng(derive_seed(gen_(), tag)); }

private:
    std::mt19937_64 gen_;
};

} // namespace rainbow
