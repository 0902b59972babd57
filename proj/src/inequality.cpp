#include "econophys/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace econophys::ineq {

void validate(const LorenzCurve& curve)
{
    const auto& pts = curve.points;
    if (pts.size() < 2) throw Error("Lorenz curve needs at least two points");
    if (pts.front().population != 0.0 || pts.front().share != 0.0) throw Error("Lorenz curve must start at (0,0)");
    if (std::abs(pts.back().population - 1.0) > 1e-12 || std::abs(pts.back().share - 1.0) > 1e-12)
        throw Error("Lorenz curve must end at (1,1)");
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].population < pts[i - 1].population || pts[i].share < pts[i - 1].share)
            throw Error("Lorenz curve must be non-decreasing");
        if (pts[i].share > pts[i].population + 1e-12) throw Error("Lorenz curve rises above the diagonal");
    }
}

CountryRecord CountryRecord::make(std::string code, double population, double quantity)
{
    if (!(population > 0.0)) throw Error("country " + code + ": population must be positive");
    if (!(quantity >= 0.0)) throw Error("country " + code + ": quantity must be non-negative");
    return {std::move(code), population, quantity, quantity / population};
}

void validate(const GiniSeries& series)
{
    for (std::size_t i = 0; i < series.points.size(); ++i) {
        const auto [year, g] = series.points[i];
        if (!(g >= 0.0 && g <= 1.0)) throw Error("Gini value outside [0,1] in year " + std::to_string(year));
        if (i > 0 && year <= series.points[i - 1].first) throw Error("Gini series years must strictly increase");
    }
}

LorenzCurve lorenz_from_samples(std::span<const double> values)
{
    if (values.empty()) throw Error("no data");
    std::vector<double> sorted(values.begin(), values.end());
    for (double v : sorted)
        if (!(v >= 0.0) || !std::isfinite(v)) throw Error("Lorenz curve needs finite non-negative values");
    std::sort(sorted.begin(), sorted.end());
    const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
    if (!(total > 0.0)) throw Error("total is zero");

    const double n = static_cast<double>(sorted.size());
    LorenzCurve curve;
    curve.points.reserve(sorted.size() + 1);
    curve.points.push_back({0.0, 0.0});
    double running = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        running += sorted[k];
        curve.points.push_back({static_cast<double>(k + 1) / n, running / total});
    }
    curve.points.back() = {1.0, 1.0};
    return curve;
}

LorenzCurve lorenz_weighted(std::span<const CountryRecord> records)
{
    if (records.size() < 2) throw Error("weighted Lorenz curve needs at least two records");
    std::vector<const CountryRecord*> order;
    order.reserve(records.size());
    for (const auto& r : records) {
        if (!(r.population >= 0.0) || !(r.quantity >= 0.0)) throw Error("country " + r.code + ": negative value");
        order.push_back(&r);
    }
    std::sort(order.begin(), order.end(), [](const CountryRecord* a, const CountryRecord* b) {
        if (a->per_capita != b->per_capita) return a->per_capita < b->per_capita;
        return a->code < b->code;
    });

    // Cumulative sums in sorted order; the totals are their last entries so
    // the result does not depend on input order.
    std::vector<std::pair<double, double>> cumulative;
    cumulative.reserve(order.size());
    double cp = 0.0, cq = 0.0;
    for (const auto* r : order) {
        cp += r->population;
        cq += r->quantity;
        cumulative.emplace_back(cp, cq);
    }
    if (!(cp > 0.0)) throw Error("total population is zero");
    if (!(cq > 0.0)) throw Error("total quantity is zero");

    LorenzCurve curve;
    curve.points.reserve(records.size() + 1);
    curve.points.push_back({0.0, 0.0});
    for (const auto& [p, q] : cumulative) curve.points.push_back({p / cp, q / cq});
    return curve;
}

double gini_from_lorenz(const LorenzCurve& curve)
{
    validate(curve);
    double area = 0.0;
    const auto& pts = curve.points;
    for (std::size_t i = 1; i < pts.size(); ++i)
        area += 0.5 * (pts[i].share + pts[i - 1].share) * (pts[i].population - pts[i - 1].population);
    return std::clamp(1.0 - 2.0 * area, 0.0, 1.0);
}

double gini_pairwise(std::span<const double> values, std::span<const double> weights)
{
    if (values.size() != weights.size()) throw Error("values and weights differ in length");
    if (values.empty()) throw Error("no data");
    double w_total = 0.0, weighted = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(weights[i] >= 0.0)) throw Error("weights must be non-negative");
        if (!(values[i] >= 0.0)) throw Error("values must be non-negative");
        w_total += weights[i];
        weighted += weights[i] * values[i];
    }
    if (!(w_total > 0.0)) throw Error("weights sum to zero");
    const double mean = weighted / w_total;
    if (!(mean > 0.0)) throw Error("zero mean");
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = 0; j < values.size(); ++j)
            sum += weights[i] * weights[j] * std::abs(values[i] - values[j]);
    return sum / (2.0 * w_total * w_total * mean);
}

double gini_pairwise(std::span<const double> values)
{
    const std::vector<double> ones(values.size(), 1.0);
    return gini_pairwise(values, ones);
}

double exponential_lorenz(double x)
{
    if (!(x >= 0.0 && x <= 1.0)) throw Error("population share must lie in [0,1]");
    if (x == 1.0) return 1.0;
    return x + (1.0 - x) * std::log1p(-x);
}

LorenzCurve exponential_lorenz_curve(std::size_t points)
{
    if (points < 2) throw Error("need at least two points");
    LorenzCurve curve;
    curve.points.reserve(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(points - 1);
        curve.points.push_back({x, exponential_lorenz(x)});
    }
    curve.points.back() = {1.0, 1.0};
    return curve;
}

double gini_two_class(double upper_share)
{
    if (!(upper_share >= 0.0 && upper_share <= 1.0)) throw Error("upper-class share must lie in [0,1]");
    return 0.5 * (1.0 + upper_share);
}

namespace {

std::optional<double> trend(std::span<const std::pair<int, double>> pts)
{
    if (pts.size() < 2) return std::nullopt;
    std::vector<double> x, y;
    for (const auto& [year, g] : pts) {
        x.push_back(year);
        y.push_back(g);
    }
    return least_squares(x, y).slope;
}

}  // namespace

SaturationReport detect_saturation(const GiniSeries& series, const SaturationOptions& options)
{
    validate(series);
    if (options.min_run < 1) throw Error("min_run must be at least 1");
    if (!(options.tol >= 0.0)) throw Error("tolerance must be non-negative");
    const auto& pts = series.points;
    if (pts.size() < options.min_run)
        throw Error("series has " + std::to_string(pts.size()) + " points, fewer than min_run");

    // Walk back from the end while points stay inside the band.
    std::size_t start = pts.size();
    while (start > 0 && std::abs(pts[start - 1].second - options.level) <= options.tol) --start;

    SaturationReport report;
    const std::size_t run = pts.size() - start;
    const std::span<const std::pair<int, double>> all(pts);
    if (run >= options.min_run) {
        report.saturated = true;
        report.start_year = pts[start].first;
        report.plateau_points = run;
        double sum = 0.0;
        for (std::size_t i = start; i < pts.size(); ++i) sum += pts[i].second;
        report.plateau_mean = sum / static_cast<double>(run);
        report.pre_trend_slope = trend(all.first(start));
    } else {
        report.pre_trend_slope = trend(all);
    }
    return report;
}

}  // namespace econophys::ineq
