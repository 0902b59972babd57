// Acceptance run: one PASS/FAIL line per criterion, details indented.
// Exit status is non-zero when any criterion fails.

#include "econophys/class_fit.hpp"
#include "econophys/fokker_planck.hpp"
#include "econophys/inequality.hpp"
#include "econophys/kinetic.hpp"
#include "support/synthetic.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

using namespace econophys;

namespace {

int failures = 0;

void verdict(int id, bool ok, const std::string& what)
{
    std::printf("[%s] AC%d %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <class... Args>
void detail(const char* fmt, Args... args)
{
    std::printf("       ");
    std::printf(fmt, args...);
    std::printf("\n");
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void boltzmann_gibbs_relaxation()
{
    struct Case {
        kinetic::ExchangeRule rule;
        std::uint64_t steps;
    };
    // The fixed rule lives on a lattice of spacing dm and relaxes diffusively,
    // so it gets a small dm and a longer run.
    const Case cases[] = {{kinetic::ExchangeRule::fixed(0.01), 300'000'000},
                          {kinetic::ExchangeRule::random_fraction(), 10'000'000},
                          {kinetic::ExchangeRule::random_split(), 10'000'000}};
    bool ok = true;
    for (const auto& c : cases) {
        kinetic::SimConfig cfg;
        cfg.agents = 10000;
        cfg.total = 10000;
        cfg.rule = c.rule;
        cfg.steps = c.steps;
        cfg.entropy_every = c.steps / 500;
        cfg.seed = 20240601;
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = kinetic::run(cfg);
        const double elapsed = seconds_since(t0);

        const double ks = ks_distance_exponential(r.final.balances, r.temperature);
        const double s_ref = kinetic::binned_exponential_entropy(r.temperature, uniform_edges(0, 10 * r.temperature, cfg.bins));
        // saturation: every sample over the last fifth of the run is near the reference
        double worst = 0.0;
        for (const auto& [step, s] : r.entropy_series)
            if (step >= cfg.steps - cfg.steps / 5) worst = std::max(worst, std::abs(s - s_ref));
        const bool rule_ok = ks < 0.02 && worst < 0.05 && elapsed < 60.0;
        ok = ok && rule_ok;
        detail("%-15s steps/agent %6llu  KS %.4f  |S - S_exp| max over last 20%% %.4f  (S_exp %.4f)  %.1f s",
               std::string(kinetic::to_string(c.rule.kind)).c_str(),
               static_cast<unsigned long long>(c.steps / cfg.agents), ks, worst, s_ref, elapsed);
    }
    verdict(1, ok, "Boltzmann-Gibbs relaxation: KS < 0.02, entropy within 0.05, < 60 s for each rule");
}

void exponential_gini()
{
    const double g = ineq::gini_from_lorenz(ineq::exponential_lorenz_curve(10000));
    detail("G = %.7f", g);
    verdict(2, std::abs(g - 0.5) <= 1e-4, "exponential Lorenz curve has G = 0.5000 +- 1e-4");
}

void two_class_gini()
{
    std::vector<double> gaps;
    for (double p : {0.04, 0.01, 0.001}) {
        const auto mix = synthetic::bulk_plus_tail(1'000'000, p, 3.0, 1.0, 0.2, 777);
        const double mean =
            std::accumulate(mix.values.begin(), mix.values.end(), 0.0) / static_cast<double>(mix.values.size());
        const double f = fit::upper_share(mean, 1.0);
        const double g = ineq::gini_from_lorenz(ineq::lorenz_from_samples(mix.values));
        gaps.push_back(std::abs(g - ineq::gini_two_class(f)));
        detail("tail population %.3f  f %.4f  sampled G %.4f  (1+f)/2 %.4f  gap %.4f", p, f, g,
               ineq::gini_two_class(f), gaps.back());
    }
    const bool ok = gaps[2] < 0.02 && gaps[0] > gaps[1] && gaps[1] > gaps[2];
    verdict(3, ok, "two-class Gini: gap < 0.02 at 0.1% tail population, shrinking through 4%, 1%, 0.1%");
}

void fokker_planck_consistency()
{
    bool ok = true;

    const fp::DriftDiffusionModel expo{1, 0, 1, 0};
    const auto d = fp::stationary_density(expo, fp::uniform_grid(50, 200001));
    double worst = 0.0;
    for (std::size_t i = 0; i < d.grid.size(); ++i) worst = std::max(worst, std::abs(d.values[i] - std::exp(-d.grid[i])));
    detail("b2 = 0: max |P - e^-r| = %.2e", worst);
    ok = ok && worst < 1e-8;

    const auto grid = fp::uniform_grid(50, 1001);
    const auto target = fp::stationary_density(expo, grid);
    fp::DensityOnGrid state{grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) state.values[i] = std::exp(-0.5 * std::pow((grid[i] - 1.0) / 0.1, 2));
    const double m = state.mass();
    for (auto& v : state.values) v /= m;
    const double dt = 0.9 * fp::stability_limit(expo, grid);
    const double l1_start = fp::l1_distance(state, target);
    state = fp::evolve(expo, state, dt, static_cast<std::size_t>(80.0 / dt));
    const double l1 = fp::l1_distance(state, target);
    detail("relaxation from a bump at T: L1 %.3f -> %.2e after t = 80", l1_start, l1);
    ok = ok && l1 < 1e-3;

    for (double a1 : {1.0, 2.0, 4.0}) {
        const fp::DriftDiffusionModel model{1, a1, 1, 1};
        const double alpha = fp::predicted_tail_exponent(model).alpha;
        double r_max = 500;
        fp::DensityOnGrid tail;
        for (int attempt = 0; attempt < 5; ++attempt) {
            try {
                tail = fp::stationary_density(model, fp::geometric_grid(1e-4, r_max, 4001));
                break;
            } catch (const fp::GridError& e) {
                r_max = e.suggested_r_max().value_or(2 * r_max);
            }
        }
        std::vector<double> x, y;
        for (std::size_t i = 0; i < tail.grid.size(); ++i)
            if (tail.grid[i] >= 50 && tail.grid[i] <= 500) {
                x.push_back(std::log(tail.grid[i]));
                y.push_back(std::log(tail.values[i]));
            }
        const double fitted = -least_squares(x, y).slope - 1.0;
        const double rel = std::abs(fitted - alpha) / alpha;
        detail("alpha = 1 + a1/b2 = %.0f: log-slope gives %.4f (%.2f%%)", alpha, fitted, 100 * rel);
        ok = ok && rel < 0.01;
    }
    verdict(4, ok, "Fokker-Planck: exponential limit, relaxation, tail slopes for alpha 2, 3, 5");
}

void fit_recovery()
{
    const synthetic::TwoClassLaw law{1.0, 0.04, 2.0};
    const auto v = synthetic::two_class(law, 1'000'000, 4242);
    const auto report = fit::fit_two_class(build_ccdf(v));
    bool ok = report.has_tail();
    if (ok) {
        const double T = report.bulk.temperature;
        const double alpha = report.tail->fit.alpha;
        const double above = report.population_split.above;
        detail("T %.4f  alpha %.4f  r* %.3f  population above r* %.4f  f %.4f", T, alpha, report.tail->crossover.r_star,
               above, report.upper_share);
        ok = std::abs(T - 1.0) < 0.02 && std::abs(alpha - 2.0) < 0.05 * 2.0 && std::abs(above - 0.04) <= 0.005;
    } else {
        detail("tail not found: %s", report.tail_status.c_str());
    }
    verdict(5, ok, "fit recovery on 10^6 samples (96/4 split): T 2%, alpha 5%, population above r* 0.04 +- 0.005");
}

void oracle_equivalence()
{
    Rng rng(31337);
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> v(1 + rng.index(200));
        for (auto& x : v) x = trial % 2 ? rng.exponential(1.0) : static_cast<double>(rng.index(10));
        if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
        worst = std::max(worst, std::abs(ineq::gini_from_lorenz(ineq::lorenz_from_samples(v)) - ineq::gini_pairwise(v)));
    }
    double worst_weighted = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<ineq::CountryRecord> panel;
        std::vector<double> pc, w;
        for (std::size_t i = 0, n = 2 + rng.index(199); i < n; ++i) {
            panel.push_back(ineq::CountryRecord::make("C" + std::to_string(i), 1e4 + 1e9 * rng.uniform(),
                                                      1e10 * rng.exponential(1.0)));
            pc.push_back(panel.back().per_capita);
            w.push_back(panel.back().population);
        }
        worst_weighted =
            std::max(worst_weighted, std::abs(ineq::gini_from_lorenz(ineq::lorenz_weighted(panel)) - ineq::gini_pairwise(pc, w)));
    }
    detail("max |difference|: unweighted %.1e, weighted %.1e", worst, worst_weighted);
    verdict(6, worst <= 1e-12 && worst_weighted <= 1e-12, "trapezoidal Gini equals pairwise Gini within 1e-12");
}

void top_share()
{
    CcdfCurve c;
    for (int i = 0; i <= 100000; ++i) {
        const double r = 60.0 * i / 100000;
        c.points.push_back({r, std::exp(-r)});
    }
    const double share = fit::top_income_share(c, 0.01);
    detail("top 1%% share %.5f, closed form q(1 - ln q) = %.5f", share, 0.01 * (1 - std::log(0.01)));
    verdict(7, std::abs(share - 0.0561) <= 1e-3, "top-1% share of exact exponential data = 0.0561 +- 1e-3");
}

void saturation()
{
    ineq::GiniSeries shaped;
    for (int y = 1980; y <= 2003; ++y) shaped.points.push_back({y, 0.70 - 0.0075 * (y - 1980)});
    const double wobble[] = {0.505, 0.495, 0.509, 0.491, 0.50, 0.503, 0.498};
    for (int k = 0; k < 7; ++k) shaped.points.push_back({2004 + k, wobble[k]});
    const auto a = ineq::detect_saturation(shaped);

    ineq::GiniSeries falling;
    for (int y = 1980; y <= 2010; ++y) falling.points.push_back({y, 0.8 - 0.01 * (y - 1980)});
    const auto b = ineq::detect_saturation(falling);

    detail("plateau series: %s (expected 2004); decreasing series: %s", a.start_year ? std::to_string(*a.start_year).c_str() : "none",
           b.saturated ? "saturated" : "no saturation");
    verdict(8, a.saturated && a.start_year == 2004 && !b.saturated, "saturation change point found; none on a decreasing series");
}

}  // namespace

int main()
{
    boltzmann_gibbs_relaxation();
    exponential_gini();
    two_class_gini();
    fokker_planck_consistency();
    fit_recovery();
    oracle_equivalence();
    top_share();
    saturation();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
