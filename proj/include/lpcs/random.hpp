#ifndef LPCS_RANDOM_HPP
#define LPCS_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

namespace lpcs {

/// SplitMix64 finalizer. Used to derive independent per-trial seeds.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
    return mix64(mix64(master) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/**
 * Seeded random source with a stream that is stable across standard
 * libraries and releases.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. The distributions are implemented here rather than taken from
 * <random>, because the std:: distribution algorithms are
 * implementation-defined:
 *
 *   - uniform01:  top 53 bits of one engine word, scaled by 2^-53 (in [0, 1))
 *   - below(n):   rejection sampling on the full 64-bit word (unbiased)
 *   - normal:     Box-Muller; both outputs of a pair are used, the second
 *                 one cached for the next call
 *   - laplace:    inverse CDF on a uniform in (-1/2, 1/2)
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : _engine(seed) {}

    [[nodiscard]] std::uint64_t next_u64() { return _engine(); }

    [[nodiscard]] double uniform01() { return static_cast<double>(_engine() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be nonzero.
    [[nodiscard]] std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t       word  = _engine();
        while (word >= limit) {
            word = _engine();
        }
        return word % n;
    }

    [[nodiscard]] double normal() {
        if (_has_spare) {
            _has_spare = false;
            return _spare;
        }
        // 1 - u lies in (0, 1], so the log is finite
        const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform01()));
        const double angle  = 2.0 * std::numbers::pi * uniform01();
        _spare              = radius * std::sin(angle);
        _has_spare          = true;
        return radius * std::cos(angle);
    }

    /// Standard Laplace (location 0, scale 1, density exp(-|x|)/2).
    [[nodiscard]] double laplace() {
        double u = uniform01() - 0.5;
        while (u == -0.5) {
            u = uniform01() - 0.5;
        }
        const double magnitude = -std::log(1.0 - 2.0 * std::abs(u));
        return u < 0.0 ? -magnitude : magnitude;
    }

private:
    std::mt19937_64 _engine;
    double          _spare{0.0};
    bool            _has_spare{false};
};

} // namespace lpcs

#endif // LPCS_RANDOM_HPP
