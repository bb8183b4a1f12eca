#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ppmsync {

inline constexpr const char* kRngName = "splitmix64/box-muller";

/// SplitMix64 with a Box-Muller Gaussian. Streams for parallel trials come
/// from for_trial(seed, trial), so results do not depend on scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static SplitMix64 for_trial(std::uint64_t seed, std::uint64_t trial) noexcept
    {
        SplitMix64 a(seed);
        SplitMix64 b(trial ^ 0xD1B54A32D192ED03ULL);
        return SplitMix64(a.next() ^ b.next());
    }

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1), never exactly 0.
    double uniform() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    double gaussian() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace ppmsync
