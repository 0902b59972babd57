#pragma once

#include <cstdint>
#include <random>

namespace econophys {

/// Seeded generator with a fully specified output stream: 64-bit Mersenne
/// Twister (std::mt19937_64, whose sequence is fixed by the standard) plus
/// hand-written conversions, so draws are identical on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open();

    /// Uniform integer on [0, n), unbiased (rejection sampling).
    std::uint64_t index(std::uint64_t n);

    /// Exponential variate with the given mean (inverse transform).
    double exponential(double mean);

private:
    std::mt19937_64 engine_;
};

}  // namespace econophys
