#include "commands.hpp"

#include "econophys/class_fit.hpp"
#include "econophys/core.hpp"
#include "econophys/fokker_planck.hpp"
#include "econophys/inequality.hpp"
#include "econophys/ingest.hpp"
#include "econophys/kinetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace econophys::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

// Writes through a temporary file and renames it into place.
void write_atomic(const fs::path& path, const std::string& content)
{
    fs::create_directories(path.parent_path().empty() ? fs::path(".") : path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_columns(const fs::path& path, const std::string& header,
                   const std::vector<std::pair<double, double>>& rows)
{
    std::string s = header + "\n";
    for (const auto& [a, b] : rows) s += num(a) + "," + num(b) + "\n";
    write_atomic(path, s);
}

void write_json(const fs::path& path, const json& doc) { write_atomic(path, doc.dump(2) + "\n"); }

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::size_t agents = 10000;
    std::optional<double> money;
    std::string rule = "random_split";
    double dm = 1.0;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::uint64_t entropy_every = 0;
    std::size_t bins = 50;
    double grid_factor = 10.0;
    std::string out = ".";
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out)
{
    kinetic::SimConfig config;
    config.agents = a.agents;
    config.total = a.money.value_or(static_cast<double>(a.agents));
    const auto kind = kinetic::parse_rule_kind(a.rule);
    config.rule = kind == kinetic::ExchangeRule::Kind::fixed_amount ? kinetic::ExchangeRule::fixed(a.dm)
                  : kind == kinetic::ExchangeRule::Kind::random_fraction ? kinetic::ExchangeRule::random_fraction()
                                                                         : kinetic::ExchangeRule::random_split();
    config.steps = a.steps ? a.steps : 1000 * static_cast<std::uint64_t>(a.agents);
    config.seed = a.seed;
    config.entropy_every = a.entropy_every ? a.entropy_every : std::max<std::uint64_t>(1, config.steps / 500);
    config.bins = a.bins;
    config.grid_factor = a.grid_factor;
    config.validate();

    const auto result = kinetic::run(config);
    const double T = result.temperature;
    const auto edges = uniform_edges(0.0, config.grid_factor * T, config.bins);
    const auto hist = kinetic::balance_histogram(result.final.balances, edges);

    std::vector<std::pair<double, double>> rows;
    for (std::size_t k = 0; k < hist.bins(); ++k) rows.emplace_back(hist.center(k), hist.masses[k] / hist.width(k));
    std::vector<std::pair<double, double>> entropy_rows;
    for (const auto& [t, s] : result.entropy_series) entropy_rows.emplace_back(static_cast<double>(t), s);

    const fs::path dir(a.out);
    write_columns(dir / "histogram.csv", "money,density", rows);
    write_columns(dir / "entropy.csv", "step,entropy", entropy_rows);

    const double ks = ks_distance_exponential(result.final.balances, T);
    const double s_ref = kinetic::binned_exponential_entropy(T, edges);
    json doc;
    doc["agents"] = config.agents;
    doc["money"] = config.total;
    doc["rule"] = std::string(kinetic::to_string(config.rule.kind));
    if (kind == kinetic::ExchangeRule::Kind::fixed_amount) doc["dm"] = config.rule.amount;
    doc["steps"] = config.steps;
    doc["seed"] = config.seed;
    doc["temperature"] = T;
    doc["accepted"] = result.accepted;
    doc["rejected"] = result.rejected;
    doc["ks_distance_exponential"] = ks;
    doc["entropy_final"] = result.entropy_series.back().second;
    doc["entropy_binned_exponential"] = s_ref;
    doc["bins"] = config.bins;
    doc["grid_max"] = config.grid_factor * T;
    write_json(dir / "summary.json", doc);

    out << "KS distance vs exponential(T=" << num(T) << "): " << num(ks) << "\n";
    return 0;
}

// ---------------------------------------------------------------------- fp

struct FpArgs {
    fp::DriftDiffusionModel model;
    std::optional<double> r_max;
    std::size_t points = 20001;
    std::string grid = "log";
    std::size_t relax_steps = 0;
    double dt = 0.0;
    std::size_t relax_points = 2001;
    std::string out = ".";
};

int cmd_fp(const FpArgs& a, std::ostream& out)
{
    const auto& m = a.model;
    m.validate();
    const double T = m.bulk_temperature();
    const double r_max = a.r_max.value_or(100.0 * T);
    std::vector<double> grid;
    if (a.grid == "log")
        grid = fp::geometric_grid(1e-4 * T, r_max, a.points);
    else if (a.grid == "uniform")
        grid = fp::uniform_grid(r_max, a.points);
    else
        throw Error("unknown grid kind '" + a.grid + "' (use log or uniform)");

    const auto density = fp::stationary_density(m, grid);
    const fs::path dir(a.out);
    std::vector<std::pair<double, double>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) rows.emplace_back(grid[i], density.values[i]);
    write_columns(dir / "density.csv", "income,density", rows);

    json doc;
    doc["a0"] = m.a0;
    doc["a1"] = m.a1;
    doc["b0"] = m.b0;
    doc["b2"] = m.b2;
    doc["r_max"] = r_max;
    doc["grid"] = a.grid;
    doc["points"] = grid.size();
    doc["bulk_temperature"] = T;
    if (m.b2 > 0.0) {
        const auto tail = fp::predicted_tail_exponent(m);
        doc["tail"] = "power law";
        doc["alpha"] = tail.alpha;
        if (!tail.warning.empty()) doc["warning"] = tail.warning;
        out << "predicted tail exponent alpha = " << num(tail.alpha) << "\n";
    } else {
        doc["tail"] = "exponential regime";
        doc["alpha"] = nullptr;
        out << "no power-law tail: exponential regime\n";
    }

    if (a.relax_steps > 0) {
        const auto relax_grid = fp::uniform_grid(r_max, a.relax_points);
        const auto target = fp::stationary_density(m, relax_grid);
        const double limit = fp::stability_limit(m, relax_grid);
        const double dt = a.dt > 0.0 ? a.dt : 0.9 * limit;

        // Narrow Gaussian at r = T as the initial condition.
        fp::DensityOnGrid state{relax_grid, std::vector<double>(relax_grid.size())};
        const double width = std::max(0.05 * T, 2.0 * (relax_grid[1] - relax_grid[0]));
        for (std::size_t i = 0; i < relax_grid.size(); ++i) {
            const double z = (relax_grid[i] - T) / width;
            state.values[i] = std::exp(-0.5 * z * z);
        }
        const double mass = state.mass();
        for (auto& v : state.values) v /= mass;

        const std::size_t every = std::max<std::size_t>(1, a.relax_steps / 100);
        std::vector<std::pair<double, double>> trajectory{{0.0, fp::l1_distance(state, target)}};
        for (std::size_t done = 0; done < a.relax_steps;) {
            const std::size_t chunk = std::min(every, a.relax_steps - done);
            state = fp::evolve(m, state, dt, chunk);
            done += chunk;
            trajectory.emplace_back(static_cast<double>(done) * dt, fp::l1_distance(state, target));
        }
        write_columns(dir / "relaxation.csv", "time,l1_to_stationary", trajectory);
        std::vector<std::pair<double, double>> final_rows;
        for (std::size_t i = 0; i < relax_grid.size(); ++i) final_rows.emplace_back(relax_grid[i], state.values[i]);
        write_columns(dir / "relaxed_density.csv", "income,density", final_rows);
        doc["relaxation"] = {{"steps", a.relax_steps}, {"dt", dt}, {"stability_limit", limit},
                             {"final_l1", trajectory.back().second}};
    }
    write_json(dir / "fp_report.json", doc);
    return 0;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
    std::string input;
    std::string format = "ccdf";
    std::vector<double> windows;
    std::string out = ".";
};

json window_json(const fit::Range& r) { return json::array({r.lo, r.hi}); }

int cmd_fit(const FitArgs& a, std::ostream& out)
{
    const auto text = ingest::read_file(a.input);
    CcdfCurve ccdf;
    if (a.format == "ccdf")
        ccdf = ingest::parse_ccdf(text, a.input);
    else if (a.format == "samples")
        ccdf = build_ccdf(ingest::parse_samples(text, a.input));
    else
        throw Error("unknown input format '" + a.format + "' (use ccdf or samples)");

    fit::FitWindows windows;
    if (a.windows.empty()) {
        windows = fit::default_windows(ccdf);
    } else {
        if (a.windows.size() != 4) throw Error("--windows takes bulk_lo,bulk_hi,tail_lo,tail_hi");
        windows = {{a.windows[0], a.windows[1]}, {a.windows[2], a.windows[3]}};
    }
    const auto report = fit::fit_two_class(ccdf, windows);

    json doc;
    doc["input"] = a.input;
    doc["windows"] = {{"bulk", window_json(windows.bulk)}, {"tail", window_json(windows.tail)},
                      {"source", a.windows.empty() ? "default" : "override"}};
    doc["T"] = report.bulk.temperature;
    doc["mean"] = report.mean;
    doc["f"] = report.upper_share;
    doc["G_two_class"] = ineq::gini_two_class(report.upper_share);
    doc["population_split"] = {{"below", report.population_split.below},
                               {"above", report.population_split.above}};
    doc["residuals"] = {{"bulk_rms", report.bulk.rms}};
    doc["tail_status"] = report.tail_status;
    if (report.tail) {
        doc["alpha"] = report.tail->fit.alpha;
        doc["r_star"] = report.tail->crossover.r_star;
        doc["residuals"]["tail_rms"] = report.tail->fit.rms;
    } else {
        doc["alpha"] = nullptr;
        doc["r_star"] = nullptr;
    }

    const fs::path dir(a.out);
    write_json(dir / "fit_report.json", doc);
    std::vector<std::pair<double, double>> rows;
    for (const auto& p : fit::normalized_ccdf(ccdf, report.bulk.temperature).points)
        rows.emplace_back(p.income, p.fraction);
    write_columns(dir / "normalized_ccdf.csv", "income_over_T,fraction", rows);

    out << "T = " << num(report.bulk.temperature) << ", f = " << num(report.upper_share) << ", tail "
        << report.tail_status << "\n";
    return 0;
}

// -------------------------------------------------------------------- gini

struct GiniArgs {
    std::string input;
    std::optional<int> year;
    ineq::SaturationOptions saturation;
    std::size_t reference_points = 1001;
    std::string out = ".";
};

int cmd_gini(const GiniArgs& a, std::ostream& out, std::ostream& err)
{
    const auto panel = ingest::parse_country_panel(ingest::read_file(a.input), a.input, a.year);
    for (const auto& w : panel.warnings) err << "warning: " << w << "\n";

    const fs::path dir(a.out);
    ineq::GiniSeries series;
    series.source = a.input;
    for (const auto& [year, records] : panel.years) {
        const auto curve = ineq::lorenz_weighted(records);
        std::vector<std::pair<double, double>> rows;
        for (const auto& p : curve.points) rows.emplace_back(p.population, p.share);
        write_columns(dir / ("lorenz_" + std::to_string(year) + ".csv"), "population_share,quantity_share", rows);
        series.points.emplace_back(year, ineq::gini_from_lorenz(curve));
    }
    std::vector<std::pair<double, double>> gini_rows;
    for (const auto& [year, g] : series.points) gini_rows.emplace_back(year, g);
    write_columns(dir / "gini_series.csv", "year,gini", gini_rows);

    std::vector<std::pair<double, double>> ref;
    for (const auto& p : ineq::exponential_lorenz_curve(a.reference_points).points) ref.emplace_back(p.population, p.share);
    write_columns(dir / "exponential_lorenz.csv", "population_share,quantity_share", ref);

    json doc;
    doc["input"] = a.input;
    doc["years"] = series.points.size();
    doc["level"] = a.saturation.level;
    doc["tol"] = a.saturation.tol;
    doc["min_run"] = a.saturation.min_run;
    json g = json::array();
    for (const auto& [year, v] : series.points) g.push_back({{"year", year}, {"gini", v}});
    doc["gini"] = g;

    if (series.points.size() < 2) {
        doc["saturation"] = "not analysed (single year)";
    } else if (series.points.size() < a.saturation.min_run) {
        doc["saturation"] = "not analysed (fewer points than min_run)";
    } else {
        const auto rep = ineq::detect_saturation(series, a.saturation);
        json s;
        s["saturated"] = rep.saturated;
        if (rep.saturated) {
            s["start_year"] = *rep.start_year;
            s["plateau_points"] = rep.plateau_points;
            s["plateau_mean"] = rep.plateau_mean;
            std::ostringstream msg;
            msg.precision(2);
            msg << std::fixed << "saturation at " << a.saturation.level << " from year " << *rep.start_year;
            s["summary"] = msg.str();
            out << msg.str() << "\n";
        } else {
            s["summary"] = "no saturation";
            out << "no saturation\n";
        }
        if (rep.pre_trend_slope) s["pre_trend_slope"] = *rep.pre_trend_slope;
        doc["saturation"] = s;
    }
    write_json(dir / "gini_report.json", doc);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    (void)out;
    CLI::App app{"Kinetic exchange, Fokker-Planck, two-class fitting and Gini analytics", "econophys"};
    app.set_config("--config", "", "Read options from a TOML/INI file mirroring the flags");
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Kinetic money-exchange simulation");
    simulate->add_option("--agents", sim.agents, "Number of agents N")->capture_default_str();
    simulate->add_option("--money", sim.money, "Total money M (default N)");
    simulate->add_option("--rule", sim.rule, "fixed | random_fraction | random_split")->capture_default_str();
    simulate->add_option("--dm", sim.dm, "Transfer amount for the fixed rule")->capture_default_str();
    simulate->add_option("--steps", sim.steps, "Transactions (default 1000 N)");
    simulate->add_option("--seed", sim.seed, "RNG seed")->required();
    simulate->add_option("--entropy-every", sim.entropy_every, "Entropy sampling interval (default steps/500)");
    simulate->add_option("--bins", sim.bins, "Entropy grid bins")->capture_default_str();
    simulate->add_option("--grid-factor", sim.grid_factor, "Entropy grid spans [0, factor M/N]")->capture_default_str();
    simulate->add_option("--out", sim.out, "Output directory")->capture_default_str();

    FpArgs fpa;
    auto* fpc = app.add_subcommand("fp", "Fokker-Planck stationary density and relaxation");
    fpc->add_option("--a0", fpa.model.a0, "Additive drift")->capture_default_str();
    fpc->add_option("--a1", fpa.model.a1, "Multiplicative drift rate")->capture_default_str();
    fpc->add_option("--b0", fpa.model.b0, "Additive diffusion")->capture_default_str();
    fpc->add_option("--b2", fpa.model.b2, "Multiplicative diffusion rate")->capture_default_str();
    fpc->add_option("--rmax", fpa.r_max, "Grid upper end (default 100 b0/a0)");
    fpc->add_option("--points", fpa.points, "Grid nodes")->capture_default_str();
    fpc->add_option("--grid", fpa.grid, "log | uniform")->capture_default_str();
    fpc->add_option("--relax-steps", fpa.relax_steps, "Time steps of the relaxation run (0 = none)");
    fpc->add_option("--dt", fpa.dt, "Time step (default 0.9 x stability limit)");
    fpc->add_option("--relax-points", fpa.relax_points, "Uniform grid nodes for relaxation")->capture_default_str();
    fpc->add_option("--out", fpa.out, "Output directory")->capture_default_str();

    FitArgs fita;
    auto* fitc = app.add_subcommand("fit", "Two-class fit of an income CCDF");
    fitc->add_option("--input", fita.input, "CCDF table or raw samples")->required();
    fitc->add_option("--format", fita.format, "ccdf | samples")->capture_default_str();
    fitc->add_option("--windows", fita.windows, "bulk_lo,bulk_hi,tail_lo,tail_hi")->delimiter(',')->expected(4);
    fitc->add_option("--out", fita.out, "Output directory")->capture_default_str();

    GiniArgs ga;
    auto* ginic = app.add_subcommand("gini", "Lorenz curves, Gini series and saturation from a country panel");
    ginic->add_option("--input", ga.input, "Country panel")->required();
    ginic->add_option("--year", ga.year, "Year for panels without a year column");
    ginic->add_option("--level", ga.saturation.level, "Saturation level")->capture_default_str();
    ginic->add_option("--tol", ga.saturation.tol, "Saturation band half-width")->capture_default_str();
    ginic->add_option("--min-run", ga.saturation.min_run, "Minimum plateau length")->capture_default_str();
    ginic->add_option("--reference-points", ga.reference_points, "Points on the exponential Lorenz curve")
        ->capture_default_str();
    ginic->add_option("--out", ga.out, "Output directory")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, err, err);
    }

    try {
        // Progress lines are diagnostics: data only ever goes to files.
        if (*simulate) return cmd_simulate(sim, err);
        if (*fpc) return cmd_fp(fpa, err);
        if (*fitc) return cmd_fit(fita, err);
        if (*ginic) return cmd_gini(ga, err, err);
    } catch (const fp::GridError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace econophys::cli
