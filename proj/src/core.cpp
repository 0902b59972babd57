#include "econophys/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace econophys {

namespace {

std::string format_value(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

TwoClassParams TwoClassParams::make(double temperature, double alpha, double r_star, double mean)
{
    TwoClassParams p;
    p.temperature = temperature;
    p.alpha = alpha;
    p.r_star = r_star;
    p.mean = mean;
    p.upper_share = mean > 0.0 ? 1.0 - temperature / mean : 0.0;
    validate(p);
    return p;
}

void validate(const MoneySample& sample)
{
    if (sample.values.empty()) throw Error("no data");
    for (std::size_t i = 0; i < sample.values.size(); ++i) {
        const double v = sample.values[i];
        if (!std::isfinite(v) || v < 0.0)
            throw Error("sample " + std::to_string(i) + " is negative or not finite: " + format_value(v));
    }
}

void validate(const BinnedDensity& density)
{
    if (density.edges.size() < 2 || density.masses.size() + 1 != density.edges.size())
        throw Error("binned density needs K+1 edges for K masses");
    for (std::size_t k = 1; k < density.edges.size(); ++k)
        if (!(density.edges[k] > density.edges[k - 1])) throw Error("bin edges must be strictly increasing");
    double total = 0.0;
    for (double m : density.masses) {
        if (!(m >= 0.0)) throw Error("negative bin mass");
        total += m;
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error("bin masses sum to " + format_value(total) + ", expected 1");
}

void validate(const CcdfCurve& curve)
{
    if (curve.empty()) throw Error("no data");
    const auto& pts = curve.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (!std::isfinite(p.income) || p.income < 0.0)
            throw Error("ccdf point " + std::to_string(i) + ": income must be finite and >= 0");
        if (!(p.fraction >= 0.0 && p.fraction <= 1.0))
            throw Error("ccdf point " + std::to_string(i) + ": fraction outside [0,1]");
        if (i > 0) {
            if (!(p.income > pts[i - 1].income))
                throw Error("ccdf point " + std::to_string(i) + ": income not strictly increasing");
            if (p.fraction > pts[i - 1].fraction)
                throw Error("ccdf point " + std::to_string(i) + ": fraction increases");
        }
    }
    if (pts.front().income == 0.0 && pts.front().fraction != 1.0)
        throw Error("ccdf starting at r = 0 must have fraction 1");
}

void validate(const TwoClassParams& p)
{
    if (!(p.temperature > 0.0)) throw Error("temperature must be positive");
    if (!(p.alpha > 1.0)) throw Error("alpha must exceed 1 for a finite mean");
    if (!(p.r_star > 0.0)) throw Error("crossover income must be positive");
    if (!(p.upper_share >= 0.0 && p.upper_share < 1.0)) throw Error("upper-class share outside [0,1)");
    if (std::abs(p.upper_share - (1.0 - p.temperature / p.mean)) > 1e-12)
        throw Error("upper-class share inconsistent with T and mean");
}

CcdfCurve build_ccdf(std::span<const double> values)
{
    if (values.empty()) throw Error("no data");
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted)
        if (!std::isfinite(v) || v < 0.0) throw Error("sample is negative or not finite: " + format_value(v));
    std::sort(sorted.begin(), sorted.end());

    const double n = static_cast<double>(sorted.size());
    CcdfCurve curve;
    std::size_t i = 0;
    while (i < sorted.size()) {
        curve.points.push_back({sorted[i], static_cast<double>(sorted.size() - i) / n});
        const double v = sorted[i];
        while (i < sorted.size() && sorted[i] == v) ++i;
    }
    return curve;
}

BinnedDensity bin_density(std::span<const double> values, std::span<const double> edges)
{
    if (values.empty()) throw Error("no data");
    if (edges.size() < 2) throw Error("need at least two bin edges");
    for (std::size_t k = 1; k < edges.size(); ++k)
        if (!(edges[k] > edges[k - 1])) throw Error("bin edges must be strictly increasing");

    BinnedDensity out;
    out.edges.assign(edges.begin(), edges.end());
    std::vector<std::size_t> counts(edges.size() - 1, 0);
    for (double v : values) {
        if (!(v >= edges.front() && v <= edges.back()))
            throw Error("value " + format_value(v) + " outside grid [" + format_value(edges.front()) + ", " +
                        format_value(edges.back()) + "]");
        auto it = std::upper_bound(edges.begin(), edges.end(), v);
        std::size_t k = static_cast<std::size_t>(it - edges.begin());
        k = k == 0 ? 0 : k - 1;
        if (k >= counts.size()) k = counts.size() - 1;
        ++counts[k];
    }
    const double n = static_cast<double>(values.size());
    out.masses.reserve(counts.size());
    for (auto c : counts) out.masses.push_back(static_cast<double>(c) / n);
    return out;
}

std::vector<double> uniform_edges(double lo, double hi, std::size_t bins)
{
    if (bins == 0 || !(hi > lo)) throw Error("uniform grid needs hi > lo and at least one bin");
    std::vector<double> edges(bins + 1);
    const double w = (hi - lo) / static_cast<double>(bins);
    for (std::size_t k = 0; k <= bins; ++k) edges[k] = lo + w * static_cast<double>(k);
    edges.back() = hi;
    return edges;
}

double ks_distance(std::span<const double> values, const std::function<double(double)>& cdf)
{
    if (values.empty()) throw Error("no data");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        const double v = sorted[i];
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == v) ++j;
        const double f = cdf(v);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(j) / n - f));
        i = j;
    }
    return d;
}

double ks_distance_exponential(std::span<const double> values, double mean)
{
    if (!(mean > 0.0)) throw Error("exponential mean must be positive");
    return ks_distance(values, [mean](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x / mean); });
}

LineFit least_squares(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw Error("least squares: x and y differ in length");
    if (x.size() < 2) throw Error("least squares: need at least two points");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error("least squares: x values are all equal");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.rms = std::sqrt(ss / n);
    fit.points = x.size();
    return fit;
}

}  // namespace econophys
