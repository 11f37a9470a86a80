#ifndef CAUSALKIT_RNG_HPP
#define CAUSALKIT_RNG_HPP

#include <cmath>
#include <cstdint>

namespace causal {

// Deterministic generator used for every random draw in the library.
// splitmix64 core with hand-rolled uniform/normal transforms, so results do
// not depend on the standard library's distribution implementations. All
// parallel code derives one stream per logical unit of work (node, row)
// instead of sharing a generator; that is what makes --jobs a no-op for
// output bytes.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller; draws exactly two words, keeps no
    // cached spare, so a stream's n-th normal is well defined.
    double normal() {
        double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Inclusive bounds, rejection-free modulo bias acceptable at our scales.
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream derivation: hash of (master seed, unit index, stream tag).
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t unit, std::uint64_t tag) {
    std::uint64_t h = mix64(master ^ 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ unit);
    h = mix64(h ^ (tag + 0x632be59bd9b4e019ULL));
    return h;
}

// Stream tags. Row indices are used directly as tags for per-row noise, so
// named tags live far away from small integers.
constexpr std::uint64_t kStreamParams = 0xffffffffffff0001ULL;
constexpr std::uint64_t kStreamStructure = 0xffffffffffff0002ULL;
constexpr std::uint64_t kStreamSubsample = 0xffffffffffff0003ULL;

}  // namespace causal

#endif
