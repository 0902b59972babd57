#include "econophys/class_fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace econophys::fit {

namespace {

constexpr std::size_t kMinWindowPoints = 5;
// Fitted T may exceed the CCDF mean by this relative amount through sampling
// noise alone when there is no tail; f is then reported as 0.
constexpr double kMeanNoiseTolerance = 0.02;

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string describe(Range w) { return "[" + fmt(w.lo) + ", " + fmt(w.hi) + "]"; }

// Points of the working curve: the CCDF with (0, 1) prepended when it does
// not already start at r = 0.
std::vector<CcdfPoint> anchored(const CcdfCurve& ccdf)
{
    std::vector<CcdfPoint> pts;
    pts.reserve(ccdf.size() + 1);
    if (ccdf.points.front().income > 0.0) pts.push_back({0.0, 1.0});
    pts.insert(pts.end(), ccdf.points.begin(), ccdf.points.end());
    return pts;
}

// Smallest income at which the CCDF falls to `level` (linear interpolation).
double income_at_fraction(const std::vector<CcdfPoint>& pts, double level)
{
    if (level >= pts.front().fraction) return pts.front().income;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].fraction <= level) {
            const auto& a = pts[i - 1];
            const auto& b = pts[i];
            if (a.fraction == b.fraction) return b.income;
            const double t = (a.fraction - level) / (a.fraction - b.fraction);
            return a.income + t * (b.income - a.income);
        }
    }
    return pts.back().income;
}

}  // namespace

void FitWindows::validate() const
{
    if (!(bulk.hi > bulk.lo)) throw Error("bulk window " + describe(bulk) + " is empty");
    if (!(tail.hi > tail.lo)) throw Error("tail window " + describe(tail) + " is empty");
    if (bulk.hi > tail.lo) throw Error("bulk window must end before the tail window starts");
}

FitWindows default_windows(const CcdfCurve& ccdf)
{
    validate(ccdf);
    const auto pts = anchored(ccdf);
    FitWindows w;
    w.bulk = {income_at_fraction(pts, 0.95), income_at_fraction(pts, 0.10)};
    w.tail = {income_at_fraction(pts, 0.03), pts.back().income};
    return w;
}

double PowerLawFit::log_ccdf(double r) const { return log_prefactor - alpha * std::log(r); }

ExponentialFit fit_exponential_bulk(const CcdfCurve& ccdf, Range window)
{
    std::vector<double> x, y;
    for (const auto& p : ccdf.points) {
        if (!window.contains(p.income)) continue;
        if (!(p.fraction > 0.0)) throw Error("exponential fit: zero CCDF value in window " + describe(window));
        x.push_back(p.income);
        y.push_back(std::log(p.fraction));
    }
    if (x.size() < kMinWindowPoints)
        throw Error("exponential fit: fewer than 5 points in window " + describe(window));
    const auto line = least_squares(x, y);
    if (!(line.slope < 0.0)) throw Error("not exponential in window " + describe(window));
    return {-1.0 / line.slope, line.intercept, line.rms, line.points};
}

PowerLawFit fit_pareto_tail(const CcdfCurve& ccdf, Range window)
{
    std::vector<double> x, y;
    for (const auto& p : ccdf.points) {
        if (!window.contains(p.income)) continue;
        if (!(p.income > 0.0)) continue;
        if (!(p.fraction > 0.0)) throw Error("power-law fit: zero CCDF value in window " + describe(window));
        x.push_back(std::log(p.income));
        y.push_back(std::log(p.fraction));
    }
    if (x.size() < kMinWindowPoints)
        throw Error("power-law fit: fewer than 5 points in window " + describe(window));
    const auto line = least_squares(x, y);
    if (!(line.slope < 0.0)) throw Error("not a power law in window " + describe(window));
    return {-line.slope, line.intercept, line.rms, line.points};
}

double ccdf_at(const CcdfCurve& ccdf, double r)
{
    const auto pts = anchored(ccdf);
    if (r <= 0.0) return 1.0;
    if (r > pts.back().income) return 0.0;
    auto it = std::lower_bound(pts.begin(), pts.end(), r,
                               [](const CcdfPoint& p, double v) { return p.income < v; });
    if (it->income == r) return it->fraction;
    const auto& b = *it;
    const auto& a = *(it - 1);
    const double t = (r - a.income) / (b.income - a.income);
    return a.fraction + t * (b.fraction - a.fraction);
}

Crossover find_crossover(const ExponentialFit& bulk, const PowerLawFit& tail, const CcdfCurve& ccdf)
{
    validate(ccdf);
    // gap(r) = ln c_exp - ln c_pow is concave with its maximum at alpha T; the
    // crossover is its root on the decreasing branch.
    auto gap = [&](double r) { return bulk.log_ccdf(r) - tail.log_ccdf(r); };
    auto slope = [&](double r) { return -1.0 / bulk.temperature + tail.alpha / r; };

    double first = ccdf.points.front().income;
    if (first <= 0.0 && ccdf.size() > 1) first = ccdf.points[1].income;
    const double last = ccdf.points.back().income;
    double lo = std::max(first, tail.alpha * bulk.temperature);
    const double hi = last;
    if (!(lo < hi) || !(gap(lo) > 0.0) || !(gap(hi) < 0.0))
        throw Error("no crossover between the exponential and power-law fits in the data range [" + fmt(first) +
                    ", " + fmt(last) + "]; revise the fit windows");

    // Newton from the right converges monotonically on a concave decreasing
    // function; the bracket guards against round-off.
    double upper = hi;
    double r = hi;
    for (int iter = 0; iter < 200; ++iter) {
        const double g = gap(r);
        if (g == 0.0) break;
        if (g > 0.0)
            lo = r;
        else
            upper = r;
        double next = r - g / slope(r);
        if (!(next > lo && next < upper)) next = 0.5 * (lo + upper);
        if (std::abs(next - r) <= 1e-15 * r) {
            r = next;
            break;
        }
        r = next;
    }
    return {r, ccdf_at(ccdf, r)};
}

double ccdf_mean(const CcdfCurve& ccdf)
{
    validate(ccdf);
    const auto pts = anchored(ccdf);
    double m = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        m += 0.5 * (pts[i].fraction + pts[i - 1].fraction) * (pts[i].income - pts[i - 1].income);
    return m;
}

double upper_share(double mean, double temperature)
{
    if (!(temperature > 0.0)) throw Error("temperature must be positive");
    if (mean < temperature) throw Error("bulk temperature exceeds mean");
    const double f = (mean - temperature) / mean;
    return std::min(f, std::nextafter(1.0, 0.0));
}

double top_income_share(const CcdfCurve& ccdf, double q)
{
    if (!(q > 0.0 && q < 1.0)) throw Error("top population fraction must lie in (0, 1)");
    const double mean = ccdf_mean(ccdf);
    if (!(mean > 0.0)) throw Error("total income is zero");
    const auto pts = anchored(ccdf);

    if (q <= pts.back().fraction) return q * pts.back().income / mean;

    // Segment where c crosses q, then integrate c from r_q to the end.
    std::size_t i = 1;
    while (pts[i].fraction > q) ++i;
    const auto& a = pts[i - 1];
    const auto& b = pts[i];
    double r_q = b.income;
    if (a.fraction != b.fraction) r_q = a.income + (a.fraction - q) / (a.fraction - b.fraction) * (b.income - a.income);
    double above = 0.5 * (q + b.fraction) * (b.income - r_q);
    for (std::size_t k = i + 1; k < pts.size(); ++k)
        above += 0.5 * (pts[k].fraction + pts[k - 1].fraction) * (pts[k].income - pts[k - 1].income);
    return (q * r_q + above) / mean;
}

TwoClassParams FitReport::params() const
{
    if (!tail) throw Error("no power-law tail: " + tail_status);
    return TwoClassParams::make(bulk.temperature, tail->fit.alpha, tail->crossover.r_star, mean);
}

FitReport fit_two_class(const CcdfCurve& ccdf, const FitWindows& windows)
{
    validate(ccdf);
    windows.validate();
    FitReport report;
    report.windows = windows;
    report.bulk = fit_exponential_bulk(ccdf, windows.bulk);
    report.mean = ccdf_mean(ccdf);

    try {
        auto tail_fit = fit_pareto_tail(ccdf, windows.tail);
        // Residual of the extrapolated exponential over the same tail window.
        double ss = 0.0;
        std::size_t n = 0;
        for (const auto& p : ccdf.points) {
            if (!windows.tail.contains(p.income) || !(p.income > 0.0)) continue;
            const double d = std::log(p.fraction) - report.bulk.log_ccdf(p.income);
            ss += d * d;
            ++n;
        }
        const double exp_rms = std::sqrt(ss / static_cast<double>(n));
        if (!(tail_fit.rms < exp_rms)) {
            report.tail_status = "absent: exponential describes the tail window as well as a power law";
        } else if (!(tail_fit.alpha > 1.0)) {
            report.tail_status = "absent: fitted alpha <= 1 (infinite mean)";
        } else {
            auto cross = find_crossover(report.bulk, tail_fit, ccdf);
            report.tail = TailResult{tail_fit, cross};
            report.tail_status = "present";
        }
    } catch (const Error& e) {
        report.tail_status = std::string("absent: ") + e.what();
    }

    if (report.tail) {
        report.population_split = {1.0 - report.tail->crossover.population_above,
                                   report.tail->crossover.population_above};
        report.upper_share = upper_share(report.mean, report.bulk.temperature);
    } else {
        report.population_split = {1.0, 0.0};
        if (report.mean < report.bulk.temperature &&
            report.bulk.temperature - report.mean <= kMeanNoiseTolerance * report.mean)
            report.upper_share = 0.0;
        else
            report.upper_share = upper_share(report.mean, report.bulk.temperature);
    }
    return report;
}

FitReport fit_two_class(const CcdfCurve& ccdf) { return fit_two_class(ccdf, default_windows(ccdf)); }

CcdfCurve normalized_ccdf(const CcdfCurve& ccdf, double temperature)
{
    if (!(temperature > 0.0)) throw Error("temperature must be positive");
    CcdfCurve out = ccdf;
    for (auto& p : out.points) p.income /= temperature;
    return out;
}

}  // namespace econophys::fit
