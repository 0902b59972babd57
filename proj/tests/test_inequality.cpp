#include "econophys/inequality.hpp"
#include "support/synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace econophys;
using namespace econophys::ineq;

namespace {

std::vector<double> random_values(Rng& rng, std::size_t n)
{
    std::vector<double> v(n);
    // mixed shapes, with ties and zeros
    const auto shape = rng.index(3);
    for (auto& x : v) {
        if (shape == 0) x = rng.exponential(2.0);
        else if (shape == 1) x = static_cast<double>(rng.index(6));
        else x = std::pow(rng.uniform_open(), -0.7);
    }
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
    return v;
}

std::vector<CountryRecord> random_panel(Rng& rng, std::size_t n)
{
    std::vector<CountryRecord> r;
    for (std::size_t i = 0; i < n; ++i)
        r.push_back(CountryRecord::make("C" + std::to_string(i), 1e5 + 1e8 * rng.uniform(), 1e9 * rng.exponential(1.0)));
    return r;
}

}  // namespace

TEST_CASE("lorenz curve from samples")
{
    const auto eq = lorenz_from_samples(std::vector<double>{1, 1, 1, 1});
    REQUIRE(eq.points.size() == 5);
    for (const auto& p : eq.points) CHECK(p.share == doctest::Approx(p.population).epsilon(1e-15));
    CHECK(gini_from_lorenz(eq) == doctest::Approx(0.0).epsilon(1e-15));

    const auto two = lorenz_from_samples(std::vector<double>{1, 0});
    CHECK(two.points == std::vector<LorenzPoint>{{0, 0}, {0.5, 0}, {1, 1}});

    CHECK_THROWS_AS(lorenz_from_samples(std::vector<double>{0, 0}), Error);
    CHECK_THROWS_AS(lorenz_from_samples(std::vector<double>{}), Error);
}

TEST_CASE("sampled exponential lorenz curve approaches the analytic one")
{
    const auto v = synthetic::exponential(100000, 1.0, 64);
    const auto c = lorenz_from_samples(v);
    double worst = 0.0;
    for (const auto& p : c.points) worst = std::max(worst, std::abs(p.share - exponential_lorenz(p.population)));
    CHECK(worst < 0.01);
}

TEST_CASE("weighted lorenz curve")
{
    const std::vector<CountryRecord> two{CountryRecord::make("B", 1000, 3000), CountryRecord::make("A", 1000, 1000)};
    const auto c = lorenz_weighted(two);
    CHECK(c.points == std::vector<LorenzPoint>{{0, 0}, {0.5, 0.25}, {1, 1}});
    CHECK(gini_from_lorenz(c) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(gini_pairwise(std::vector<double>{1, 3}, std::vector<double>{1, 1}) == doctest::Approx(0.25).epsilon(1e-15));

    const std::vector<CountryRecord> same{CountryRecord::make("A", 10, 20), CountryRecord::make("B", 30, 60),
                                          CountryRecord::make("C", 5, 10)};
    for (const auto& p : lorenz_weighted(same).points) CHECK(p.share == doctest::Approx(p.population).epsilon(1e-14));

    Rng rng(9);
    auto panel = random_panel(rng, 30);
    const auto ref = lorenz_weighted(panel);
    for (int trial = 0; trial < 5; ++trial) {
        for (std::size_t i = panel.size() - 1; i > 0; --i) std::swap(panel[i], panel[rng.index(i + 1)]);
        CHECK(lorenz_weighted(panel).points == ref.points);
    }

    CHECK_THROWS_AS(lorenz_weighted(std::vector<CountryRecord>{CountryRecord::make("A", 1, 1)}), Error);
    CHECK_THROWS_AS(lorenz_weighted(std::vector<CountryRecord>{CountryRecord::make("A", 1, 0), CountryRecord::make("B", 1, 0)}),
                    Error);
    CHECK_THROWS_AS(CountryRecord::make("Z", 0, 5), Error);
}

TEST_CASE("pairwise gini")
{
    CHECK(gini_pairwise(std::vector<double>{0, 1}) == 0.5);
    CHECK(gini_pairwise(std::vector<double>{3, 3, 3}) == 0.0);
    CHECK_THROWS_AS(gini_pairwise(std::vector<double>{0, 0}), Error);
    CHECK_THROWS_AS(gini_pairwise(std::vector<double>{1, 2}, std::vector<double>{1, -1}), Error);
}

TEST_CASE("trapezoidal gini equals the pairwise gini")
{
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const auto v = random_values(rng, 1 + rng.index(200));
        const double a = gini_from_lorenz(lorenz_from_samples(v));
        const double b = gini_pairwise(v);
        CHECK(std::abs(a - b) <= 1e-12);
        CHECK(std::abs(b - synthetic::gini_sorted(v)) <= 1e-12);
    }
    for (int trial = 0; trial < 50; ++trial) {
        const auto panel = random_panel(rng, 2 + rng.index(150));
        std::vector<double> pc, w;
        for (const auto& r : panel) {
            pc.push_back(r.per_capita);
            w.push_back(r.population);
        }
        CHECK(std::abs(gini_from_lorenz(lorenz_weighted(panel)) - gini_pairwise(pc, w)) <= 1e-12);
    }
}

TEST_CASE("gini is scale invariant")
{
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const auto v = random_values(rng, 2 + rng.index(100));
        const double lambda = std::exp(8 * rng.uniform() - 4);
        std::vector<double> s(v);
        for (auto& x : s) x *= lambda;
        CHECK(gini_pairwise(s) == doctest::Approx(gini_pairwise(v)).epsilon(1e-12));
        CHECK(gini_from_lorenz(lorenz_from_samples(s)) ==
              doctest::Approx(gini_from_lorenz(lorenz_from_samples(v))).epsilon(1e-12));

        auto panel = random_panel(rng, 20);
        const double g = gini_from_lorenz(lorenz_weighted(panel));
        for (auto& r : panel) r = CountryRecord::make(r.code, r.population, r.quantity * lambda);
        CHECK(gini_from_lorenz(lorenz_weighted(panel)) == doctest::Approx(g).epsilon(1e-12));
    }
}

TEST_CASE("a mean-preserving spread never raises the lorenz curve")
{
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        auto v = random_values(rng, 2 + rng.index(80));
        std::sort(v.begin(), v.end());
        const std::size_t i = rng.index(v.size() - 1);
        const std::size_t j = i + 1 + rng.index(v.size() - i - 1);
        auto spread = v;
        const double delta = v[i] * rng.uniform();  // poorer gives to richer
        spread[i] -= delta;
        spread[j] += delta;
        const auto before = lorenz_from_samples(v);
        const auto after = lorenz_from_samples(spread);
        REQUIRE(before.points.size() == after.points.size());
        bool dominated = true;
        for (std::size_t k = 0; k < before.points.size(); ++k)
            if (after.points[k].share > before.points[k].share + 1e-12) dominated = false;
        CHECK(dominated);
        CHECK(gini_pairwise(spread) >= gini_pairwise(v) - 1e-12);
    }
}

TEST_CASE("exponential lorenz curve")
{
    CHECK(exponential_lorenz(0.0) == 0.0);
    CHECK(exponential_lorenz(1.0) == 1.0);
    // share of income below the median: ∫₀^{ln 2} r e^{-r} dr
    const double quad = synthetic::simpson([](double r) { return r * std::exp(-r); }, 0.0, std::log(2.0), 2000);
    CHECK(std::abs(exponential_lorenz(0.5) - quad) < 1e-12);
    CHECK(exponential_lorenz(0.5) == doctest::Approx(0.15343).epsilon(1e-4));
    CHECK_THROWS_AS(exponential_lorenz(1.5), Error);

    const auto c = exponential_lorenz_curve(10000);
    CHECK_NOTHROW(validate(c));
    CHECK(std::abs(gini_from_lorenz(c) - 0.5) < 1e-4);
}

TEST_CASE("two-class gini formula")
{
    CHECK(gini_two_class(0.0) == 0.5);
    CHECK(gini_two_class(0.2) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(gini_two_class(1.0) == 1.0);
    CHECK_THROWS_AS(gini_two_class(-0.1), Error);
    CHECK_THROWS_AS(gini_two_class(1.1), Error);
}

TEST_CASE("two-class gini gap shrinks with the upper-class population")
{
    std::vector<double> gaps;
    for (double p : {0.04, 0.01, 0.001}) {
        const auto mix = synthetic::bulk_plus_tail(400000, p, 3.0, 1.0, 0.2, 1234);
        const double mean = std::accumulate(mix.values.begin(), mix.values.end(), 0.0) / static_cast<double>(mix.values.size());
        const double f = 1.0 - 1.0 / mean;
        const double sampled = gini_from_lorenz(lorenz_from_samples(mix.values));
        gaps.push_back(std::abs(sampled - gini_two_class(f)));
    }
    CHECK(gaps[0] > gaps[1]);
    CHECK(gaps[1] > gaps[2]);
    CHECK(gaps[2] < 0.02);
}

TEST_CASE("saturation detection")
{
    GiniSeries shaped;
    for (int y = 1980; y <= 2003; ++y) shaped.points.push_back({y, 0.70 - 0.0075 * (y - 1980)});
    const double wobble[] = {0.505, 0.495, 0.509, 0.491, 0.50, 0.503, 0.498};
    for (int k = 0; k < 7; ++k) shaped.points.push_back({2004 + k, wobble[k]});
    const auto r = detect_saturation(shaped);
    CHECK(r.saturated);
    REQUIRE(r.start_year);
    CHECK(*r.start_year == 2004);
    CHECK(r.plateau_points == 7);
    CHECK(r.plateau_mean == doctest::Approx(0.50).epsilon(0.01));
    REQUIRE(r.pre_trend_slope);
    CHECK(*r.pre_trend_slope == doctest::Approx(-0.0075).epsilon(1e-9));

    GiniSeries falling;
    for (int y = 1980; y <= 2010; ++y) falling.points.push_back({y, 0.8 - 0.01 * (y - 1980)});
    CHECK_FALSE(detect_saturation(falling).saturated);
    CHECK_FALSE(detect_saturation(falling).start_year);

    GiniSeries flat;
    for (int y = 1990; y <= 1999; ++y) flat.points.push_back({y, 0.5});
    const auto f = detect_saturation(flat);
    CHECK(f.saturated);
    CHECK(*f.start_year == 1990);

    // a run shorter than min_run is not a plateau
    GiniSeries brief;
    for (int y = 2000; y <= 2009; ++y) brief.points.push_back({y, y < 2006 ? 0.7 - 0.02 * (y - 2000) : 0.5});
    CHECK_FALSE(detect_saturation(brief, {0.5, 0.02, 5}).saturated);
    CHECK(detect_saturation(brief, {0.5, 0.02, 4}).saturated);

    CHECK_THROWS_AS(detect_saturation(GiniSeries{{{2000, 0.5}, {1999, 0.5}}, ""}), Error);
    CHECK_THROWS_AS(detect_saturation(GiniSeries{{{2000, 0.5}}, ""}), Error);
}
