#include "econophys/kinetic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace econophys::kinetic {

void ExchangeRule::validate() const
{
    if (debt_allowed) throw Error("debt is not supported by the exchange rules");
    if (kind == Kind::fixed_amount && !(amount > 0.0 && std::isfinite(amount)))
        throw Error("fixed_amount rule needs a positive transfer amount");
}

std::string_view to_string(ExchangeRule::Kind kind)
{
    switch (kind) {
    case ExchangeRule::Kind::fixed_amount: return "fixed";
    case ExchangeRule::Kind::random_fraction: return "random_fraction";
    case ExchangeRule::Kind::random_split: return "random_split";
    }
    return "unknown";
}

ExchangeRule::Kind parse_rule_kind(std::string_view name)
{
    if (name == "fixed" || name == "fixed_amount") return ExchangeRule::Kind::fixed_amount;
    if (name == "random_fraction") return ExchangeRule::Kind::random_fraction;
    if (name == "random_split") return ExchangeRule::Kind::random_split;
    throw Error("unknown exchange rule '" + std::string(name) + "'");
}

void SimConfig::validate() const
{
    if (agents < 2) throw Error("need at least 2 agents");
    if (!(total > 0.0 && std::isfinite(total))) throw Error("total money must be positive");
    rule.validate();
    if (steps < 1) throw Error("steps must be at least 1");
    if (entropy_every < 1) throw Error("entropy_every must be at least 1");
    if (bins < 10) throw Error("entropy grid needs at least 10 bins");
    if (!(grid_factor > 0.0)) throw Error("grid factor must be positive");
}

AgentEnsemble init_equal(std::size_t n, double total)
{
    if (n < 2) throw Error("need at least 2 agents");
    if (!(total > 0.0 && std::isfinite(total))) throw Error("total money must be positive");
    return {std::vector<double>(n, total / static_cast<double>(n)), total};
}

bool step(AgentEnsemble& ensemble, const ExchangeRule& rule, Rng& rng)
{
    auto& m = ensemble.balances;
    if (m.size() < 2) throw Error("need at least 2 agents");
    const auto n = static_cast<std::uint64_t>(m.size());
    const auto payer = rng.index(n);
    auto payee = rng.index(n - 1);
    if (payee >= payer) ++payee;

    switch (rule.kind) {
    case ExchangeRule::Kind::fixed_amount: {
        if (m[payer] < rule.amount) return false;
        m[payer] -= rule.amount;
        m[payee] += rule.amount;
        return true;
    }
    case ExchangeRule::Kind::random_fraction: {
        const double dm = rng.uniform() * 0.5 * (m[payer] + m[payee]);
        if (m[payer] < dm) return false;
        m[payer] -= dm;
        m[payee] += dm;
        return true;
    }
    case ExchangeRule::Kind::random_split: {
        const double pool = m[payer] + m[payee];
        const double share = rng.uniform() * pool;
        m[payer] = share;
        m[payee] = pool - share;
        return true;
    }
    }
    return false;
}

double entropy(const BinnedDensity& density)
{
    double s = 0.0;
    for (double p : density.masses)
        if (p > 0.0) s -= p * std::log(p);
    return s;
}

BinnedDensity balance_histogram(std::span<const double> balances, std::span<const double> edges)
{
    if (balances.empty()) throw Error("no data");
    BinnedDensity out;
    out.edges.assign(edges.begin(), edges.end());
    std::vector<std::size_t> counts(edges.size() - 1, 0);
    for (double v : balances) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), v);
        std::size_t k = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
        if (k >= counts.size()) k = counts.size() - 1;
        ++counts[k];
    }
    const double n = static_cast<double>(balances.size());
    out.masses.reserve(counts.size());
    for (auto c : counts) out.masses.push_back(static_cast<double>(c) / n);
    return out;
}

double binned_exponential_entropy(double mean, std::span<const double> edges)
{
    if (!(mean > 0.0)) throw Error("exponential mean must be positive");
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a = std::exp(-edges[k] / mean);
        const double b = k + 2 == edges.size() ? 0.0 : std::exp(-edges[k + 1] / mean);
        const double p = a - b;
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

SimResult run(const SimConfig& config)
{
    config.validate();
    SimResult result;
    result.seed = config.seed;
    result.final = init_equal(config.agents, config.total);
    result.temperature = result.final.temperature();

    const auto edges = uniform_edges(0.0, config.grid_factor * result.temperature, config.bins);
    auto record = [&](std::uint64_t t) {
        result.entropy_series.emplace_back(t, entropy(balance_histogram(result.final.balances, edges)));
    };

    Rng rng(config.seed);
    record(0);
    for (std::uint64_t t = 1; t <= config.steps; ++t) {
        if (step(result.final, config.rule, rng))
            ++result.accepted;
        else
            ++result.rejected;
        if (t % config.entropy_every == 0 || t == config.steps) record(t);
    }
    return result;
}

std::vector<SimResult> run_ensemble(const SimConfig& config, std::span<const std::uint64_t> seeds,
                                    unsigned threads)
{
    config.validate();
    std::vector<SimResult> results(seeds.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, seeds.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) {
            SimConfig c = config;
            c.seed = seeds[i];
            results[i] = run(c);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    return results;
}

}  // namespace econophys::kinetic
