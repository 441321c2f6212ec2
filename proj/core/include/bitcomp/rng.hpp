#pragma once

#include <cstdint>
#include <limits>

namespace bitcomp {

// SplitMix64: tiny splittable PRNG. Used to derive independent, reproducible
// streams per key / per trial; heavy distributional work goes through the
// standard <random> distributions on top of it.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n) by rejection on the top bits.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do { v = (*this)(); } while (v >= limit);
        return v % n;
    }

    // A decorrelated child seed; distinct stream ids give independent streams.
    std::uint64_t derive(std::uint64_t stream_id) const {
        SplitMix64 d(state_ ^ (stream_id + 1) * 0xD1B54A32D192ED03ULL);
        d();
        return d();
    }

    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

private:
    std::uint64_t state_;
};

} // namespace bitcomp
