// Agent-based money exchange: N agents trade conservatively in random
// pairs and relax toward the exponential (Boltzmann-Gibbs) distribution.
#pragma once

#include "econophys/core.hpp"
#include "econophys/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace econophys::kinetic {

struct AgentEnsemble {
    std::vector<double> balances;
    double total = 0.0;

    std::size_t size() const { return balances.size(); }
    /// Money temperature M/N.
    double temperature() const { return total / static_cast<double>(balances.size()); }
};

/// Conservative pairwise transaction rules. In each step a payer i and a
/// payee j are drawn; the payer hands over an amount Δm unless that would
/// leave the payer negative, in which case the transaction is rejected.
///   fixed_amount    Δm = amount
///   random_fraction Δm = ν (m_i + m_j) / 2,  ν ~ U(0,1)
///   random_split    the pair pools its money and splits it at ε ~ U(0,1)
struct ExchangeRule {
    enum class Kind { fixed_amount, random_fraction, random_split };

    Kind kind = Kind::random_split;
    double amount = 0.0;
    bool debt_allowed = false;

    static ExchangeRule fixed(double amount) { return {Kind::fixed_amount, amount, false}; }
    static ExchangeRule random_fraction() { return {Kind::random_fraction, 0.0, false}; }
    static ExchangeRule random_split() { return {Kind::random_split, 0.0, false}; }

    void validate() const;
};

std::string_view to_string(ExchangeRule::Kind kind);
ExchangeRule::Kind parse_rule_kind(std::string_view name);

struct SimConfig {
    std::size_t agents = 10000;
    double total = 10000.0;
    ExchangeRule rule = ExchangeRule::random_split();
    std::uint64_t steps = 1;
    std::uint64_t seed = 0;
    std::uint64_t entropy_every = 10000;
    std::size_t bins = 50;
    double grid_factor = 10.0;  // entropy grid spans [0, grid_factor * M/N]

    void validate() const;
};

struct SimResult {
    AgentEnsemble final;
    std::vector<std::pair<std::uint64_t, double>> entropy_series;
    double temperature = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
};

AgentEnsemble init_equal(std::size_t n, double total);

/// One transaction between two distinct uniformly chosen agents. Returns
/// false when the transaction is rejected (ensemble left unchanged).
bool step(AgentEnsemble& ensemble, const ExchangeRule& rule, Rng& rng);

/// S = -sum p ln p with 0 ln 0 = 0.
double entropy(const BinnedDensity& density);

/// Histogram of balances on the run's fixed entropy grid; balances above the
/// top edge are counted in the last bin.
BinnedDensity balance_histogram(std::span<const double> balances, std::span<const double> edges);

/// Entropy of the exponential law of the given mean, binned on `edges`,
/// with the mass beyond the last edge folded into the last bin.
double binned_exponential_entropy(double mean, std::span<const double> edges);

SimResult run(const SimConfig& config);

/// Independent runs for each seed, dispatched on worker threads. Results are
/// returned in seed order regardless of scheduling.
std::vector<SimResult> run_ensemble(const SimConfig& config, std::span<const std::uint64_t> seeds,
                                    unsigned threads = 0);

}  // namespace econophys::kinetic
