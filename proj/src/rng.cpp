#include "econophys/rng.hpp"

#include <cmath>
#include <limits>

namespace econophys {

double Rng::uniform_open()
{
    double u = 0.0;
    while (u == 0.0) u = uniform();
    return u;
}

std::uint64_t Rng::index(std::uint64_t n)
{
    // Accept only draws below the largest multiple of n.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
}

double Rng::exponential(double mean) { return -mean * std::log(uniform_open()); }

}  // namespace econophys
