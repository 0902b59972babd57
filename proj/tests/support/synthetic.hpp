// Test-only generators and independent oracles. Nothing here calls into the
// code paths it is used to check.
#pragma once

#include "econophys/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

namespace synthetic {

inline std::vector<double> exponential(std::size_t n, double mean, std::uint64_t seed)
{
    econophys::Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = rng.exponential(mean);
    return v;
}

inline std::vector<double> pareto(std::size_t n, double alpha, double x_min, std::uint64_t seed)
{
    econophys::Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = x_min * std::pow(rng.uniform_open(), -1.0 / alpha);
    return v;
}

/// Continuous two-class law: c(r) = exp(-r/T) below r* = T ln(1/p) and
/// p (r/r*)^(-alpha) above, so a fraction p of the population lies above r*.
struct TwoClassLaw {
    double temperature;
    double tail_population;
    double alpha;

    double r_star() const { return temperature * std::log(1.0 / tail_population); }
    double mean() const
    {
        return temperature * (1.0 - tail_population) + tail_population * r_star() / (alpha - 1.0);
    }
};

inline std::vector<double> two_class(const TwoClassLaw& law, std::size_t n, std::uint64_t seed)
{
    econophys::Rng rng(seed);
    std::vector<double> v(n);
    const double rs = law.r_star();
    for (auto& x : v) {
        const double u = rng.uniform_open();
        x = u > law.tail_population ? -law.temperature * std::log(u)
                                    : rs * std::pow(u / law.tail_population, -1.0 / law.alpha);
    }
    return v;
}

/// Exponential bulk (mean T) holding a fraction 1-p of agents plus a Pareto
/// tail of p agents whose x_min is set so the income in excess of T is a
/// fraction `excess_share` of the total, i.e. 1 - T/mean = excess_share.
struct Mixture {
    std::vector<double> values;
    std::size_t tail_count = 0;  // tail agents are the last tail_count values
    double x_min = 0.0;
};

inline Mixture bulk_plus_tail(std::size_t n, double tail_population, double alpha, double temperature,
                              double excess_share, std::uint64_t seed)
{
    Mixture m;
    m.tail_count = static_cast<std::size_t>(std::llround(tail_population * static_cast<double>(n)));
    const double tail_mean = temperature * (1.0 + excess_share / (1.0 - excess_share) / tail_population);
    m.x_min = tail_mean * (alpha - 1.0) / alpha;
    m.values = exponential(n - m.tail_count, temperature, seed);
    auto tail = pareto(m.tail_count, alpha, m.x_min, seed + 7919);
    m.values.insert(m.values.end(), tail.begin(), tail.end());
    return m;
}

/// Plain bisection on a bracket with a sign change.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13)
{
    double flo = f(lo);
    for (int i = 0; i < 400 && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n = 2000)
{
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Hill estimator of the tail exponent from the k largest values.
inline double hill(std::vector<double> v, std::size_t k)
{
    std::sort(v.begin(), v.end(), std::greater<>());
    const double threshold = v[k];
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += std::log(v[i] / threshold);
    return static_cast<double>(k) / s;
}

/// Gini by the sorted-rank formula, independent of any Lorenz construction.
inline double gini_sorted(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double weighted = 0.0, total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        weighted += static_cast<double>(i + 1) * v[i];
        total += v[i];
    }
    return 2.0 * weighted / (n * total) - (n + 1.0) / n;
}

/// Closed form of ∫₀^r (a0 + a1 s)/(b0 + b2 s²) ds.
inline double drift_potential_closed(double a0, double a1, double b0, double b2, double r)
{
    if (b2 == 0.0) return (a0 * r + 0.5 * a1 * r * r) / b0;
    const double k = std::sqrt(b2 / b0);
    return a0 / std::sqrt(b0 * b2) * std::atan(k * r) + a1 / (2.0 * b2) * std::log1p(b2 * r * r / b0);
}

}  // namespace synthetic
