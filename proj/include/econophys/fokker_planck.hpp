// Drift-diffusion model of income with additive and multiplicative parts:
//
//   dP/dt = d/dr [A(r) P] + d²/dr² [B(r) P],
//   A(r) = a0 + a1 r,   B(r) = b0 + b2 r².
//
// The zero-flux stationary solution P(r) = C/B(r) exp(-∫₀^r A/B ds) is
// exponential with T = b0/a0 at low income and a power law with cumulative
// exponent alpha = 1 + a1/b2 at high income (a Pearson type IV density).
// Both boundaries (r = 0 and r = r_max) are reflecting.
#pragma once

#include "econophys/core.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace econophys::fp {

struct DriftDiffusionModel {
    double a0 = 1.0;  // additive drift, money/time
    double a1 = 0.0;  // multiplicative drift rate, 1/time
    double b0 = 1.0;  // additive diffusion, money²/time
    double b2 = 0.0;  // multiplicative diffusion rate, 1/time

    double drift(double r) const { return a0 + a1 * r; }
    double diffusion(double r) const { return b0 + b2 * r * r; }
    /// Temperature of the exponential bulk, b0/a0.
    double bulk_temperature() const { return b0 / a0; }

    void validate() const;
};

struct DensityOnGrid {
    std::vector<double> grid;
    std::vector<double> values;

    /// Trapezoidal integral of the values over the grid.
    double mass() const;
};

/// Grid-related failure. When the grid is too short, carries the r_max that
/// would capture the required mass.
class GridError : public Error {
public:
    GridError(const std::string& what, std::optional<double> suggested_r_max)
        : Error(what), suggested_r_max_(suggested_r_max)
    {}
    std::optional<double> suggested_r_max() const { return suggested_r_max_; }

private:
    std::optional<double> suggested_r_max_;
};

/// `points` equally spaced nodes on [0, r_max].
std::vector<double> uniform_grid(double r_max, std::size_t points);

/// 0 followed by `points - 1` log-spaced nodes from r_first to r_max.
std::vector<double> geometric_grid(double r_first, double r_max, std::size_t points);

/// φ(r_i) = ∫₀^{r_i} A/B ds at every grid node.
std::vector<double> drift_potential(const DriftDiffusionModel& model, std::span<const double> grid);

/// Zero-flux stationary density at the grid nodes, normalized so the
/// trapezoidal integral is 1 (the fixed point of evolve on the same grid).
/// Requires r_max >= 50 b0/a0 and at most 1e-6 of the mass beyond r_max;
/// otherwise throws GridError with a suggested r_max.
DensityOnGrid stationary_density(const DriftDiffusionModel& model, std::span<const double> grid);

/// Numerical flux at the faces between consecutive nodes, as used by evolve.
std::vector<double> face_fluxes(const DriftDiffusionModel& model, const DensityOnGrid& density);

/// Largest time step for which the explicit update keeps every density value
/// non-negative; ~ Δr²/(2 max B) when diffusion dominates.
double stability_limit(const DriftDiffusionModel& model, std::span<const double> grid);

/// Explicit conservative finite-volume integration with reflecting walls.
/// Throws GridError naming the bound when dt exceeds stability_limit.
DensityOnGrid evolve(const DriftDiffusionModel& model, const DensityOnGrid& initial, double dt,
                     std::size_t steps);

struct TailPrediction {
    double alpha = 0.0;
    std::string warning;  // non-empty when the mean diverges (alpha <= 1)
};

/// Cumulative tail exponent alpha = 1 + a1/b2. Throws when b2 = 0.
TailPrediction predicted_tail_exponent(const DriftDiffusionModel& model);

/// ∫ |p - q| dr by the trapezoidal rule on a shared grid.
double l1_distance(const DensityOnGrid& p, const DensityOnGrid& q);

}  // namespace econophys::fp
