// Two-class decomposition of an income CCDF: exponential bulk with
// temperature T, Pareto tail with exponent alpha, crossover income r*.
#pragma once

#include "econophys/core.hpp"

#include <optional>
#include <string>

namespace econophys::fit {

struct Range {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double r) const { return r >= lo && r <= hi; }
};

struct FitWindows {
    Range bulk;  // log-linear regression of the exponential part
    Range tail;  // log-log regression of the power-law part

    void validate() const;
};

/// Bulk between the 5th and 90th population percentiles, tail over the top
/// 3% of the population.
FitWindows default_windows(const CcdfCurve& ccdf);

/// ln c = log_prefactor - r / T
struct ExponentialFit {
    double temperature = 0.0;
    double log_prefactor = 0.0;
    double rms = 0.0;
    std::size_t points = 0;

    double log_ccdf(double r) const { return log_prefactor - r / temperature; }
};

/// ln c = log_prefactor - alpha ln r
struct PowerLawFit {
    double alpha = 0.0;
    double log_prefactor = 0.0;
    double rms = 0.0;
    std::size_t points = 0;

    double log_ccdf(double r) const;
};

ExponentialFit fit_exponential_bulk(const CcdfCurve& ccdf, Range window);
PowerLawFit fit_pareto_tail(const CcdfCurve& ccdf, Range window);

struct Crossover {
    double r_star = 0.0;
    double population_above = 0.0;
};

/// Income above which the fitted power law exceeds the fitted exponential,
/// within the data range. The population share above it is read off the
/// CCDF itself.
Crossover find_crossover(const ExponentialFit& bulk, const PowerLawFit& tail, const CcdfCurve& ccdf);

/// c(r) interpolated linearly between CCDF points; 1 below the first point
/// when the curve does not start at 0, 0 beyond the last point.
double ccdf_at(const CcdfCurve& ccdf, double r);

/// Mean income as the trapezoidal integral of c(r) from 0 (where c = 1) to
/// the last point.
double ccdf_mean(const CcdfCurve& ccdf);

/// f = (mean - T) / mean, clipped below 1.
double upper_share(double mean, double temperature);

/// Share of total income held by the richest fraction q of the population.
double top_income_share(const CcdfCurve& ccdf, double q);

struct PopulationSplit {
    double below = 1.0;
    double above = 0.0;
};

struct TailResult {
    PowerLawFit fit;
    Crossover crossover;
};

struct FitReport {
    FitWindows windows;
    ExponentialFit bulk;
    std::optional<TailResult> tail;
    std::string tail_status;  // "present", or why the tail was rejected
    double mean = 0.0;
    double upper_share = 0.0;
    PopulationSplit population_split;

    bool has_tail() const { return tail.has_value(); }
    /// Full three-parameter set; throws when the tail is absent.
    TwoClassParams params() const;
};

FitReport fit_two_class(const CcdfCurve& ccdf, const FitWindows& windows);
FitReport fit_two_class(const CcdfCurve& ccdf);

/// The curve with incomes divided by T, collapsing exponential bulks onto
/// e^{-x}.
CcdfCurve normalized_ccdf(const CcdfCurve& ccdf, double temperature);

}  // namespace econophys::fit
