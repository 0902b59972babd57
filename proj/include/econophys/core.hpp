// Shared domain types: money samples, binned densities, complementary
// cumulative distributions and the two-class parameter set.
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace econophys {

/// Raised for any violated precondition or invalid input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MoneySample {
    std::vector<double> values;
    std::string unit_label;
};

/// Probability masses over a strictly increasing grid of K+1 edges.
struct BinnedDensity {
    std::vector<double> edges;
    std::vector<double> masses;

    std::size_t bins() const { return masses.size(); }
    double width(std::size_t k) const { return edges[k + 1] - edges[k]; }
    double center(std::size_t k) const { return 0.5 * (edges[k] + edges[k + 1]); }
};

struct CcdfPoint {
    double income;
    double fraction;  // share of population with income >= `income`

    bool operator==(const CcdfPoint&) const = default;
};

struct CcdfCurve {
    std::vector<CcdfPoint> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

/// Exponential bulk temperature, Pareto exponent, crossover income and the
/// derived upper-class share f = 1 - T/mean.
struct TwoClassParams {
    double temperature = 0.0;
    double alpha = 0.0;
    double r_star = 0.0;
    double mean = 0.0;
    double upper_share = 0.0;

    /// Builds the parameter set, deriving f from mean and T. Throws on any
    /// violated invariant.
    static TwoClassParams make(double temperature, double alpha, double r_star, double mean);
};

void validate(const MoneySample& sample);
void validate(const BinnedDensity& density);
void validate(const CcdfCurve& curve);
void validate(const TwoClassParams& params);

/// c(r) = (#values >= r) / N at every distinct sample value.
CcdfCurve build_ccdf(std::span<const double> values);
inline CcdfCurve build_ccdf(const MoneySample& sample) { return build_ccdf(sample.values); }

/// Histogram normalized to unit total mass. A value equal to the last edge
/// belongs to the last bin; anything outside [edges.front(), edges.back()]
/// is an error.
BinnedDensity bin_density(std::span<const double> values, std::span<const double> edges);
inline BinnedDensity bin_density(const MoneySample& sample, std::span<const double> edges)
{
    return bin_density(std::span<const double>(sample.values), edges);
}

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins);

/// sup_x |F_empirical(x) - cdf(x)| for a continuous reference cdf.
double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf);
double ks_distance_exponential(std::span<const double> values, double mean);

/// Least-squares line y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
    std::size_t points = 0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace econophys
