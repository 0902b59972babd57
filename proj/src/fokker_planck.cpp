#include "econophys/fokker_planck.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace econophys::fp {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1] (symmetric half).
constexpr std::array<double, 8> kNodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> kWeights = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <class F>
double gauss16(F&& f, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
        const double dx = half * kNodes[k];
        sum += kWeights[k] * (f(mid - dx) + f(mid + dx));
    }
    return sum * half;
}

template <class F>
void for_each_gauss_node(double a, double b, F&& f)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
        const double dx = half * kNodes[k];
        f(mid - dx, kWeights[k] * half);
        f(mid + dx, kWeights[k] * half);
    }
}

constexpr double kTailMassTolerance = 1e-6;
constexpr double kMinRangeInTemperatures = 50.0;

// Integrals over one interval [a, b], with φ measured from the left end:
//   dphi    = ∫_a^b A/B
//   forward = ∫_a^b exp(-(φ(s) - φ(a))) / B(s) ds
//   reverse = ∫_a^b exp(φ(s) - φ(b)) ds
struct CellIntegrals {
    double dphi = 0.0;
    double forward = 0.0;
    double reverse = 0.0;
};

class Integrator {
public:
    explicit Integrator(const DriftDiffusionModel& m) : model_(m)
    {
        base_scale_ = m.b0 / m.a0;
        if (m.b2 > 0.0) base_scale_ = std::min(base_scale_, std::sqrt(m.b0 / m.b2));
        if (m.a1 > 0.0) base_scale_ = std::min(base_scale_, std::sqrt(m.b0 / m.a1));
    }

    double ratio(double r) const { return model_.drift(r) / model_.diffusion(r); }

    // Length over which A/B and exp(-φ) change appreciably near r.
    double local_scale(double r) const
    {
        return std::min(model_.diffusion(r) / model_.drift(r), std::max(base_scale_, r));
    }

    // Plain 16-point rules on a piece short compared with local_scale.
    CellIntegrals piece(double a, double b) const
    {
        CellIntegrals out;
        auto ratio_fn = [this](double s) { return ratio(s); };
        out.dphi = gauss16(ratio_fn, a, b);
        for_each_gauss_node(a, b, [&](double s, double w) {
            const double from_left = gauss16(ratio_fn, a, s);
            out.forward += w * std::exp(-from_left) / model_.diffusion(s);
            out.reverse += w * std::exp(from_left - out.dphi);
        });
        return out;
    }

    CellIntegrals cell(double a, double b) const
    {
        const double width = b - a;
        const double step = 0.5 * local_scale(a);
        const auto pieces = static_cast<std::size_t>(std::min(1.0e6, std::max(1.0, std::ceil(width / step))));
        if (pieces == 1) return piece(a, b);

        CellIntegrals out;
        std::vector<CellIntegrals> parts(pieces);
        for (std::size_t j = 0; j < pieces; ++j) {
            const double lo = a + width * static_cast<double>(j) / static_cast<double>(pieces);
            const double hi = j + 1 == pieces ? b : a + width * static_cast<double>(j + 1) / static_cast<double>(pieces);
            parts[j] = piece(lo, hi);
        }
        double phi = 0.0;
        for (const auto& p : parts) {
            out.forward += std::exp(-phi) * p.forward;
            phi += p.dphi;
        }
        out.dphi = phi;
        double phi_right = 0.0;  // φ(b) - φ(right end of piece j)
        for (std::size_t j = pieces; j-- > 0;) {
            out.reverse += std::exp(-phi_right) * parts[j].reverse;
            phi_right += parts[j].dphi;
        }
        return out;
    }

private:
    const DriftDiffusionModel& model_;
    double base_scale_ = 1.0;
};

void validate_grid(std::span<const double> grid)
{
    if (grid.size() < 3) throw GridError("grid needs at least 3 nodes", std::nullopt);
    if (grid.front() != 0.0) throw GridError("grid must start at r = 0", std::nullopt);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]) || !std::isfinite(grid[i]))
            throw GridError("grid must be strictly increasing and finite", std::nullopt);
}

double round_up_nice(double x)
{
    const double mag = std::pow(10.0, std::floor(std::log10(x)) - 1.0);
    return std::ceil(x / mag) * mag;
}

std::string format(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Faces {
    std::vector<double> dphi;     // φ_{k+1} - φ_k
    std::vector<double> upper;    // w+ = B_{k+1} / I_k
    std::vector<double> lower;    // w- = exp(-dphi) B_k / I_k
    std::vector<double> volumes;  // dual-cell lengths
};

Faces build_faces(const DriftDiffusionModel& model, std::span<const double> grid)
{
    Integrator integ(model);
    const std::size_t n = grid.size();
    Faces f;
    f.dphi.resize(n - 1);
    f.upper.resize(n - 1);
    f.lower.resize(n - 1);
    f.volumes.assign(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto c = integ.cell(grid[k], grid[k + 1]);
        f.dphi[k] = c.dphi;
        f.upper[k] = model.diffusion(grid[k + 1]) / c.reverse;
        f.lower[k] = std::exp(-c.dphi) * model.diffusion(grid[k]) / c.reverse;
        const double h = grid[k + 1] - grid[k];
        f.volumes[k] += 0.5 * h;
        f.volumes[k + 1] += 0.5 * h;
    }
    return f;
}

}  // namespace

void DriftDiffusionModel::validate() const
{
    if (!(a0 > 0.0 && std::isfinite(a0))) throw Error("additive drift a0 must be positive");
    if (!(b0 > 0.0 && std::isfinite(b0))) throw Error("additive diffusion b0 must be positive");
    if (!(a1 >= 0.0 && std::isfinite(a1))) throw Error("multiplicative drift a1 must be non-negative");
    if (!(b2 >= 0.0 && std::isfinite(b2))) throw Error("multiplicative diffusion b2 must be non-negative");
}

double DensityOnGrid::mass() const
{
    double m = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        m += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    return m;
}

std::vector<double> uniform_grid(double r_max, std::size_t points)
{
    if (points < 3 || !(r_max > 0.0)) throw GridError("uniform grid needs r_max > 0 and >= 3 points", std::nullopt);
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = r_max * static_cast<double>(i) / static_cast<double>(points - 1);
    g.back() = r_max;
    return g;
}

std::vector<double> geometric_grid(double r_first, double r_max, std::size_t points)
{
    if (points < 3 || !(r_first > 0.0) || !(r_max > r_first))
        throw GridError("geometric grid needs 0 < r_first < r_max and >= 3 points", std::nullopt);
    std::vector<double> g(points);
    g[0] = 0.0;
    const double ratio = std::log(r_max / r_first) / static_cast<double>(points - 2);
    for (std::size_t i = 1; i < points; ++i) g[i] = r_first * std::exp(ratio * static_cast<double>(i - 1));
    g.back() = r_max;
    return g;
}

std::vector<double> drift_potential(const DriftDiffusionModel& model, std::span<const double> grid)
{
    model.validate();
    validate_grid(grid);
    Integrator integ(model);
    std::vector<double> phi(grid.size(), 0.0);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) phi[k + 1] = phi[k] + integ.cell(grid[k], grid[k + 1]).dphi;
    return phi;
}

DensityOnGrid stationary_density(const DriftDiffusionModel& model, std::span<const double> grid)
{
    model.validate();
    validate_grid(grid);
    Integrator integ(model);
    const std::size_t n = grid.size();
    const double r_max = grid.back();

    std::vector<double> phi(n, 0.0);
    double inside = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto c = integ.cell(grid[k], grid[k + 1]);
        inside += std::exp(-phi[k]) * c.forward;
        phi[k + 1] = phi[k] + c.dphi;
    }

    // Mass beyond r_max, integrated outward until it stops contributing.
    std::vector<std::pair<double, double>> outer;  // (right end, cumulative mass)
    double beyond = 0.0;
    {
        double a = r_max;
        double phi_a = phi.back();
        int quiet = 0;
        for (int iter = 0; iter < 20000 && a < 1e250; ++iter) {
            const double b = a + 0.5 * integ.local_scale(a);
            const auto c = integ.piece(a, b);
            const double contrib = std::exp(-phi_a) * c.forward;
            beyond += contrib;
            outer.emplace_back(b, beyond);
            phi_a += c.dphi;
            a = b;
            quiet = contrib < 1e-17 * (inside + beyond) ? quiet + 1 : 0;
            if (quiet >= 20) break;
        }
    }
    const double total = inside + beyond;

    const double min_range = kMinRangeInTemperatures * model.bulk_temperature();
    if (beyond > kTailMassTolerance * total || r_max < min_range) {
        double suggestion = std::max(r_max, min_range);
        for (const auto& [right, cumulative] : outer) {
            if (beyond - cumulative <= 0.5 * kTailMassTolerance * total) {
                suggestion = std::max(suggestion, right);
                break;
            }
            suggestion = std::max(suggestion, right);
        }
        suggestion = round_up_nice(suggestion);
        std::string why = r_max < min_range
                              ? "grid too short: r_max = " + format(r_max) + " is below 50 b0/a0 = " + format(min_range)
                              : "grid too short: " + format(beyond / total) + " of the mass lies beyond r_max = " +
                                    format(r_max);
        throw GridError(why + "; suggested r_max = " + format(suggestion), suggestion);
    }

    // Normalized by the trapezoidal mass: this is the discrete invariant the
    // conservative time stepper preserves, so the result is its exact fixed point.
    DensityOnGrid out;
    out.grid.assign(grid.begin(), grid.end());
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = std::exp(-phi[i]) / model.diffusion(grid[i]);
    const double trapezoid = out.mass();
    for (auto& v : out.values) v /= trapezoid;
    return out;
}

std::vector<double> face_fluxes(const DriftDiffusionModel& model, const DensityOnGrid& density)
{
    model.validate();
    validate_grid(density.grid);
    const auto f = build_faces(model, density.grid);
    std::vector<double> flux(f.upper.size());
    for (std::size_t k = 0; k < flux.size(); ++k)
        flux[k] = -(f.upper[k] * density.values[k + 1] - f.lower[k] * density.values[k]);
    return flux;
}

namespace {

double stability_limit(const Faces& f)
{
    const std::size_t n = f.volumes.size();
    double limit = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double out = 0.0;
        if (i > 0) out += f.upper[i - 1];
        if (i + 1 < n) out += f.lower[i];
        if (out > 0.0) limit = std::min(limit, f.volumes[i] / out);
    }
    return limit;
}

}  // namespace

double stability_limit(const DriftDiffusionModel& model, std::span<const double> grid)
{
    model.validate();
    validate_grid(grid);
    return stability_limit(build_faces(model, grid));
}

DensityOnGrid evolve(const DriftDiffusionModel& model, const DensityOnGrid& initial, double dt, std::size_t steps)
{
    model.validate();
    validate_grid(initial.grid);
    if (initial.values.size() != initial.grid.size()) throw Error("density and grid differ in length");
    for (double v : initial.values)
        if (!(v >= 0.0)) throw Error("initial density must be non-negative");
    if (std::abs(initial.mass() - 1.0) > 1e-6) throw Error("initial density is not normalized");
    if (!(dt > 0.0)) throw Error("time step must be positive");

    const auto f = build_faces(model, initial.grid);
    const double limit = stability_limit(f);
    if (dt > limit)
        throw GridError("time step " + format(dt) + " exceeds the stability bound dt <= " + format(limit) +
                            " (min over nodes of cell volume / outflow coefficient, ~ dr^2 / (2 max B))",
                        std::nullopt);

    const std::size_t n = initial.grid.size();
    DensityOnGrid state = initial;
    std::vector<double> flux(n - 1);
    for (std::size_t t = 0; t < steps; ++t) {
        auto& p = state.values;
        for (std::size_t k = 0; k + 1 < n; ++k) flux[k] = f.lower[k] * p[k] - f.upper[k] * p[k + 1];
        p[0] -= dt * flux[0] / f.volumes[0];
        for (std::size_t i = 1; i + 1 < n; ++i) p[i] += dt * (flux[i - 1] - flux[i]) / f.volumes[i];
        p[n - 1] += dt * flux[n - 2] / f.volumes[n - 1];
    }
    return state;
}

TailPrediction predicted_tail_exponent(const DriftDiffusionModel& model)
{
    model.validate();
    if (model.b2 == 0.0) throw Error("no power-law tail (pure exponential regime)");
    TailPrediction out;
    out.alpha = 1.0 + model.a1 / model.b2;
    if (model.a1 == 0.0) out.warning = "alpha = 1: boundary of finite mean, the tail mean diverges";
    return out;
}

double l1_distance(const DensityOnGrid& p, const DensityOnGrid& q)
{
    if (p.grid != q.grid) throw Error("densities live on different grids");
    double d = 0.0;
    for (std::size_t i = 1; i < p.grid.size(); ++i)
        d += 0.5 * (std::abs(p.values[i] - q.values[i]) + std::abs(p.values[i - 1] - q.values[i - 1])) *
             (p.grid[i] - p.grid[i - 1]);
    return d;
}

}  // namespace econophys::fp
