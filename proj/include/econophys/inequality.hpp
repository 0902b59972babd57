// Lorenz curves, Gini coefficients and saturation of Gini time series.
#pragma once

#include "econophys/core.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace econophys::ineq {

struct LorenzPoint {
    double population;  // cumulative population share x
    double share;       // cumulative income (or quantity) share y

    bool operator==(const LorenzPoint&) const = default;
};

struct LorenzCurve {
    std::vector<LorenzPoint> points;
};

void validate(const LorenzCurve& curve);

struct CountryRecord {
    std::string code;
    double population = 0.0;
    double quantity = 0.0;
    double per_capita = 0.0;

    static CountryRecord make(std::string code, double population, double quantity);
    bool operator==(const CountryRecord&) const = default;
};

struct GiniSeries {
    std::vector<std::pair<int, double>> points;  // (year, G)
    std::string source;
};

void validate(const GiniSeries& series);

LorenzCurve lorenz_from_samples(std::span<const double> values);
inline LorenzCurve lorenz_from_samples(const MoneySample& s) { return lorenz_from_samples(s.values); }

/// Countries sorted by per-capita quantity; x is cumulative population share,
/// y cumulative quantity share.
LorenzCurve lorenz_weighted(std::span<const CountryRecord> records);

/// G = 1 - 2 * (trapezoidal area under the curve).
double gini_from_lorenz(const LorenzCurve& curve);

/// Weighted mean absolute difference over twice the mean, O(n²).
double gini_pairwise(std::span<const double> values, std::span<const double> weights);
double gini_pairwise(std::span<const double> values);

/// Lorenz curve of the exponential law, y = x + (1 - x) ln(1 - x).
double exponential_lorenz(double x);
LorenzCurve exponential_lorenz_curve(std::size_t points);

/// G = (1 + f)/2: an exponential lower class plus an upper class of
/// negligible population holding income share f. Valid only in that limit.
double gini_two_class(double upper_share);

struct SaturationOptions {
    double level = 0.5;
    double tol = 0.02;
    std::size_t min_run = 5;
};

struct SaturationReport {
    bool saturated = false;
    std::optional<int> start_year;
    std::size_t plateau_points = 0;
    double plateau_mean = 0.0;
    /// Least-squares slope of G per year before the plateau (whole series if
    /// there is none); absent with fewer than two points.
    std::optional<double> pre_trend_slope;
};

/// Earliest year from which every later G stays within level ± tol, over at
/// least min_run points.
SaturationReport detect_saturation(const GiniSeries& series, const SaturationOptions& options = {});

}  // namespace econophys::ineq
