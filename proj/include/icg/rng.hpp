#ifndef ICG_RNG_HPP
#define ICG_RNG_HPP

#include <cstdint>
#include <string_view>

namespace icg {

/// SplitMix64 step: mixes a 64-bit counter into a well-distributed word.
/// Pure integer arithmetic, so streams are identical on every platform.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Counter-based generator over a seed; split() derives an independent
/// stream, which is how per-problem / per-coordinate draws stay decoupled.
class SplitRng {
public:
    explicit SplitRng(std::uint64_t seed) : state_(seed) {
        // Burn one step so seed 0 does not start at the raw counter.
        splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    /// Uniform in [0, 1) with 53 random bits.
    double next_u01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_u01(); }

    SplitRng split(std::uint64_t stream) {
        std::uint64_t s = state_ ^ (0x9e3779b97f4a7c15ull * (stream + 1));
        return SplitRng(splitmix64(s));
    }

private:
    std::uint64_t state_;
};

/// FNV-1a over a string, used to derive per-problem seed streams from names.
inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace icg

#endif
