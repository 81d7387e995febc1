#ifndef SPR_RNG_HPP
#define SPR_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace spr {

// Deterministic generator with named substreams.
//
// Every randomized step draws from Rng(root_seed, "name", index) so that
// changing one stage (say, the carving order in iteration 3) never perturbs
// the draws of another. The state evolution is the splitmix64 sequence,
// which is platform independent; std:: engines and distributions are
// avoided because their outputs are not pinned by the standard.
class Rng {
public:
    Rng(uint64_t root_seed, std::string_view stream, uint64_t index = 0)
        : state_(derive(root_seed, stream, index)) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) without modulo bias (Lemire rejection).
    uint64_t next_below(uint64_t bound) {
        if (bound <= 1) return 0;
        while (true) {
            uint64_t x = next_u64();
            __uint128_t m = static_cast<__uint128_t>(x) * bound;
            auto lo = static_cast<uint64_t>(m);
            if (lo >= bound || lo >= (0ull - bound) % bound)
                return static_cast<uint64_t>(m >> 64);
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_real01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double next_real(double lo, double hi) {
        return lo + (hi - lo) * next_real01();
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // First k entries of a random permutation of {0, .., n-1}.
    std::vector<int> sample_indices(int n, int k) {
        std::vector<int> ids(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) ids[static_cast<size_t>(i)] = i;
        shuffle(ids);
        ids.resize(static_cast<size_t>(k < n ? k : n));
        return ids;
    }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static uint64_t derive(uint64_t root, std::string_view stream, uint64_t index) {
        uint64_t h = mix(root ^ 0x6a09e667f3bcc909ull);
        for (char c : stream)
            h = mix(h ^ static_cast<uint64_t>(static_cast<unsigned char>(c)));
        return mix(h ^ index);
    }

    uint64_t state_;
};

}  // namespace spr

#endif  // SPR_RNG_HPP
