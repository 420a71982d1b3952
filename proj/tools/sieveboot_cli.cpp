// Command-line front end: simulate, acvf, fit, bootstrap, edgeworth,
// experiment, report.

#include "sieveboot/acvf.hpp"
#include "sieveboot/ar_sieve.hpp"
#include "sieveboot/bootstrap.hpp"
#include "sieveboot/edgeworth.hpp"
#include "sieveboot/errors.hpp"
#include "sieveboot/harness/config.hpp"
#include "sieveboot/harness/experiment.hpp"
#include "sieveboot/harness/io.hpp"
#include "sieveboot/harness/report.hpp"
#include "sieveboot/levinson.hpp"
#include "sieveboot/random.hpp"
#include "sieveboot/stats.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#ifndef SIEVEBOOT_PRESET_DIR
#define SIEVEBOOT_PRESET_DIR "presets"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sieveboot;
using namespace sieveboot::harness;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ModelArgs {
    double d = 0.0;
    double phi = 0.0;
    double sigma2 = 1.0;

    ArfimaSpec spec() const {
        ArfimaSpec s{d, phi, sigma2};
        s.validate();
        return s;
    }
};

void add_model_options(CLI::App* app, ModelArgs& m) {
    app->add_option("--d", m.d, "Memory parameter, |d| < 0.5");
    app->add_option("--phi", m.phi, "AR(1) coefficient, |phi| < 1");
    app->add_option("--sigma2", m.sigma2, "Innovation variance");
}

fs::path ensure_dir(const std::string& dir) {
    fs::path p = dir.empty() ? fs::path(".") : fs::path(dir);
    fs::create_directories(p);
    return p;
}

std::vector<double> read_series(const std::string& path) {
    const CsvTable t = read_csv(path);
    const std::size_t col = t.column("value");
    std::vector<double> y;
    y.reserve(t.rows.size());
    for (const auto& row : t.rows) y.push_back(std::stod(row[col]));
    return y;
}

// simulate ---------------------------------------------------------------

struct SimulateArgs {
    ModelArgs model;
    std::size_t T = 500;
    std::uint64_t seed = 1;
    std::size_t replication = 0;
    std::string out = "-";
};

int run_simulate(const SimulateArgs& a) {
    const ArfimaSpec spec = a.model.spec();
    const AcvfSequence acvf = arfima_acvf(spec, a.T - 1);
    RandomStream rng = replication_stream(a.seed, a.replication, StreamPurpose::simulate, "path");
    const std::vector<double> y = simulate_gaussian(acvf, a.T, rng);
    std::FILE* f = a.out == "-" ? stdout : std::fopen(a.out.c_str(), "w");
    if (!f) throw ConfigError("cannot write " + a.out);
    std::fprintf(f, "t,value\n");
    for (std::size_t t = 0; t < y.size(); ++t) std::fprintf(f, "%zu,%s\n", t + 1, format_double(y[t]).c_str());
    if (f != stdout) std::fclose(f);
    return 0;
}

// acvf -------------------------------------------------------------------

struct AcvfArgs {
    ModelArgs model;
    std::size_t maxlag = 50;
    std::optional<std::size_t> T;
};

int run_acvf(const AcvfArgs& a) {
    const ArfimaSpec spec = a.model.spec();
    const AcvfSequence acvf = arfima_acvf(spec, std::max(a.maxlag, a.T.value_or(1) - 1));
    std::printf("k,gamma,rho\n");
    for (std::size_t k = 0; k <= a.maxlag; ++k)
        std::printf("%zu,%s,%s\n", k, format_double(acvf[k]).c_str(), format_double(acvf.rho(k)).c_str());
    if (a.T) {
        std::fprintf(stderr, "var_mean(T=%zu) = %s\n", *a.T,
                     format_double(exact_mean_variance(acvf, *a.T)).c_str());
    }
    return 0;
}

// fit --------------------------------------------------------------------

struct FitArgs {
    std::string input;
    std::string method = "burg";
    std::optional<std::size_t> order;
    double bandwidth_exponent = 0.65;
};

int run_fit(const FitArgs& a) {
    const std::vector<double> y = read_series(a.input);
    const SieveMethod method = sieve_method_from_string(a.method);
    json out{{"T", y.size()}, {"method", to_string(method)}};
    std::size_t h = 0;
    if (a.order) {
        h = *a.order;
    } else {
        const OrderSelection sel = select_order_aic(y, method);
        h = sel.h_hat;
        out["aic"] = {{"max_order", sel.max_order}, {"trace", sel.aic_trace}};
    }
    const SieveFit f = fit(y, h, method);
    out["h"] = f.h;
    out["mean"] = f.mean;
    out["phi_bar"] = f.phi_bar;
    out["sigma2_bar"] = f.sigma2_bar;
    const Periodogram pg = periodogram(y);
    const auto N = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(y.size()), a.bandwidth_exponent)));
    const MemoryEstimate lw = local_whittle(pg, N);
    const MemoryEstimate gp = gph(pg, N);
    out["memory"] = {{"bandwidth", N}, {"local_whittle", lw.d_hat}, {"gph", gp.d_hat}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

// bootstrap --------------------------------------------------------------

struct BootstrapArgs {
    std::string input;
    std::string method = "sbs";
    std::string estimator = "burg";
    std::optional<std::size_t> order;
    double fixed_d = 0.5;
    double d = 0.0;
    std::size_t B = 1000;
    std::uint64_t seed = 1;
    std::vector<std::string> statistics{"mean"};
    std::string out_dir = ".";
    bool keep_paths = false;
};

int run_bootstrap(const BootstrapArgs& a) {
    const std::vector<double> y = read_series(a.input);
    BootstrapMethod m;
    m.kind = bootstrap_kind_from_string(a.method);
    m.estimator = sieve_method_from_string(a.estimator);
    m.fixed_order = a.order;
    m.fixed_d = a.fixed_d;
    std::vector<StatisticSpec> stats;
    for (const auto& s : a.statistics) stats.push_back(statistic_from_string(s));

    const BootstrapGenerator gen(y, m);
    RandomStream rng = replication_stream(a.seed, 0, StreamPurpose::bootstrap, m.label());
    const fs::path dir = ensure_dir(a.out_dir);
    std::vector<std::string> header{"draw"};
    for (const auto& s : stats) header.push_back(s.name());
    CsvWriter w(dir / ("bootstrap_" + m.label() + ".csv"), header);
    std::optional<CsvWriter> paths;
    if (a.keep_paths) paths.emplace(dir / ("paths_" + m.label() + ".csv"), std::vector<std::string>{"draw", "t", "value"});
    std::vector<double> path(y.size());
    for (std::size_t b = 0; b < a.B; ++b) {
        gen.draw(rng, path);
        w.cell(b);
        for (const auto& s : stats) w.cell(compute_statistic(s, path, a.d));
        w.end_row();
        if (paths)
            for (std::size_t t = 0; t < path.size(); ++t) {
                paths->cell(b).cell(t + 1).cell(path[t]);
                paths->end_row();
            }
    }
    json cfg{{"input", a.input}, {"method", to_json(m)}, {"B", a.B}, {"statistics", a.statistics}, {"d", a.d}};
    json manifest = make_manifest("bootstrap", a.seed, cfg);
    manifest["fit"] = {{"h", gen.fit().h}, {"phi_bar", gen.fit().phi_bar}, {"sigma2_bar", gen.fit().sigma2_bar}};
    manifest["prefilter"] = {{"d", gen.prefilter().d}, {"raw", gen.prefilter().raw}, {"clamped", gen.prefilter().clamped},
                             {"applied", gen.prefiltered()}};
    write_json(dir / "manifest.json", manifest);
    return 0;
}

// edgeworth --------------------------------------------------------------

struct EdgeworthArgs {
    ModelArgs model;
    std::size_t T = 500;
    std::size_t k = 1;
    double half_width_sd = 6.0;
    bool first_order = false;
    bool allow_invalid_d = false;
    bool dense = false;
    unsigned threads = 1;
    std::string out = "-";
};

int run_edgeworth(const EdgeworthArgs& a) {
    const ArfimaSpec spec = a.model.spec();
    const AcvfSequence acvf = arfima_acvf(spec, a.T - 1);
    EdgeworthOptions o;
    o.allow_invalid_d = a.allow_invalid_d;
    o.first_order_only = a.first_order;
    o.trace_polynomial = !a.dense;
    o.threads = a.threads;
    const EdgeworthEvaluator ev(a.k, acvf, a.T, spec.d, o);
    const std::vector<double> grid = default_rho0_grid(ev, a.half_width_sd);
    const EdgeworthCurve c = edgeworth_density_rho0(ev, grid);
    std::FILE* f = a.out == "-" ? stdout : std::fopen(a.out.c_str(), "w");
    if (!f) throw ConfigError("cannot write " + a.out);
    std::fprintf(f, "x,cdf,pdf,valid\n");
    for (std::size_t i = 0; i < c.x.size(); ++i)
        std::fprintf(f, "%s,%s,%s,%d\n", format_double(c.x[i]).c_str(), format_double(c.cdf[i]).c_str(),
                     format_double(c.density[i]).c_str(), c.valid[i] ? 1 : 0);
    if (f != stdout) std::fclose(f);
    if (!c.monotone) std::fprintf(stderr, "warning: expansion is not monotone on this grid\n");
    return 0;
}

// experiment / report ----------------------------------------------------

struct ExperimentArgs {
    std::string config;
    std::string preset;
    std::string preset_dir = SIEVEBOOT_PRESET_DIR;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> R;
    std::optional<std::size_t> B;
    std::vector<std::string> only;
    bool keep_paths = false;
    bool quartiles = false;
    bool quiet = false;
    unsigned threads = 1;
};

std::vector<ExperimentConfig> load_plan(const ExperimentArgs& a) {
    if (a.config.empty() == a.preset.empty()) throw ConfigError("give exactly one of --config or --preset");
    fs::path path = a.config.empty() ? fs::path(a.preset_dir) / (a.preset + ".json") : fs::path(a.config);
    std::vector<ExperimentConfig> plan = load_configs(path);
    std::vector<ExperimentConfig> kept;
    for (auto& c : plan) {
        if (!a.only.empty() && std::find(a.only.begin(), a.only.end(), c.name) == a.only.end()) continue;
        if (a.seed) c.seed = *a.seed;
        if (a.R) c.R = *a.R;
        if (a.B) c.B = *a.B;
        if (a.keep_paths) c.keep_paths = true;
        c.validate();
        kept.push_back(c);
    }
    if (kept.empty()) throw ConfigError("no experiments selected");
    return kept;
}

int run_experiments(const ExperimentArgs& a) {
    const std::vector<ExperimentConfig> plan = load_plan(a);
    const fs::path root = ensure_dir(a.out_dir);
    ExperimentReport combined;
    ReportOptions ro;
    ro.quartiles = a.quartiles;
    ro.threads = a.threads;
    for (const auto& c : plan) {
        const auto start = std::chrono::steady_clock::now();
        RunOptions opts;
        opts.threads = a.threads;
        if (!a.quiet) {
            const std::size_t step = std::max<std::size_t>(1, c.R / 10);
            opts.progress = [&c, step](std::size_t done) {
                if (done % step == 0 || done == c.R) std::fprintf(stderr, "\r%s: %zu/%zu", c.name.c_str(), done, c.R);
            };
        }
        const ExperimentResult result = run_experiment(c, opts);
        write_experiment(result, root / c.name);
        merge_into(combined, build_report(result, ro));
        if (!a.quiet) {
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::fprintf(stderr, "\r%s: done in %.1f s\n", c.name.c_str(), secs);
        }
    }
    write_report(combined, root);
    json configs = json::array();
    for (const auto& c : plan) configs.push_back(to_json(c));
    write_json(root / "manifest.json", make_manifest("experiment", plan.front().seed, configs));
    return 0;
}

struct ReportArgs {
    std::vector<std::string> inputs;
    std::string out_dir = "report";
    bool quartiles = false;
    unsigned threads = 1;
};

int run_report(const ReportArgs& a) {
    ExperimentReport combined;
    ReportOptions ro;
    ro.quartiles = a.quartiles;
    ro.threads = a.threads;
    json configs = json::array();
    std::uint64_t seed = 0;
    for (const auto& in : a.inputs) {
        std::vector<fs::path> dirs;
        const fs::path manifest = fs::path(in) / "manifest.json";
        if (fs::exists(manifest) && read_json(manifest).at("config").is_object()) {
            dirs.push_back(in);
        } else if (fs::is_directory(in)) {
            for (const auto& e : fs::directory_iterator(in))
                if (e.is_directory() && fs::exists(e.path() / "manifest.json")) dirs.push_back(e.path());
            std::sort(dirs.begin(), dirs.end());
        }
        if (dirs.empty()) throw ConfigError("no experiment outputs under " + in);
        for (const auto& dir : dirs) {
            const ExperimentResult r = read_experiment(dir);
            configs.push_back(to_json(r.config));
            seed = r.config.seed;
            merge_into(combined, build_report(r, ro));
        }
    }
    const fs::path root = ensure_dir(a.out_dir);
    write_report(combined, root);
    write_json(root / "manifest.json", make_manifest("report", seed, configs));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sieve bootstrap inference for long-memory series"};
    app.require_subcommand(1);
    app.set_version_flag("--version", software_version());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Emit one exact Gaussian ARFIMA(1,d,0) path");
    add_model_options(s, sim.model);
    s->add_option("--T", sim.T, "Length")->check(CLI::PositiveNumber);
    s->add_option("--seed", sim.seed, "Master seed");
    s->add_option("--replication", sim.replication, "Replication index (selects the stream)");
    s->add_option("--out", sim.out, "Output CSV ('-' for stdout)");

    AcvfArgs ac;
    auto* c = app.add_subcommand("acvf", "Emit the autocovariance table");
    add_model_options(c, ac.model);
    c->add_option("--maxlag", ac.maxlag, "Largest lag");
    c->add_option("--T", ac.T, "Also report Var(ybar_T) on stderr");

    FitArgs fa;
    auto* f = app.add_subcommand("fit", "Sieve fit and memory estimates for a series");
    f->add_option("--input", fa.input, "CSV with a 'value' column")->required();
    f->add_option("--method", fa.method, "burg | yule_walker | least_squares");
    f->add_option("--order", fa.order, "Fixed order (default: AIC)");
    f->add_option("--bandwidth-exponent", fa.bandwidth_exponent, "Memory estimator bandwidth T^a");

    BootstrapArgs ba;
    auto* b = app.add_subcommand("bootstrap", "Bootstrap statistics for one series");
    b->add_option("--input", ba.input, "CSV with a 'value' column")->required();
    b->add_option("--method", ba.method, "sbs | pfsbs | fpfbs");
    b->add_option("--estimator", ba.estimator, "burg | yule_walker | least_squares");
    b->add_option("--order", ba.order, "Fixed sieve order (default: AIC)");
    b->add_option("--fixed-d", ba.fixed_d, "Pre-filter for fpfbs");
    b->add_option("--d", ba.d, "d used by renorm_mean");
    b->add_option("--B", ba.B, "Number of draws")->check(CLI::PositiveNumber);
    b->add_option("--seed", ba.seed, "Master seed");
    b->add_option("--statistic", ba.statistics, "mean, renorm_mean, acf(k), acf0(k)");
    b->add_option("--out-dir", ba.out_dir, "Output directory");
    b->add_flag("--keep-paths", ba.keep_paths, "Also write every bootstrap path");

    EdgeworthArgs ea;
    auto* e = app.add_subcommand("edgeworth", "Edgeworth CDF and density of the zero-mean lag-k autocorrelation");
    add_model_options(e, ea.model);
    e->add_option("--T", ea.T, "Sample size");
    e->add_option("--k", ea.k, "Lag");
    e->add_option("--half-width", ea.half_width_sd, "Grid half width in asymptotic sd");
    e->add_flag("--first-order", ea.first_order, "Drop the fourth-cumulant terms");
    e->add_flag("--allow-invalid-d", ea.allow_invalid_d, "Evaluate even when d >= 0.1");
    e->add_flag("--dense", ea.dense, "Recompute matrix products at every grid point");
    e->add_option("--threads", ea.threads, "Worker threads")->default_val(hw);
    e->add_option("--out", ea.out, "Output CSV ('-' for stdout)");

    ExperimentArgs xa;
    auto* x = app.add_subcommand("experiment", "Run Monte Carlo experiments from a config or preset");
    x->add_option("--config", xa.config, "JSON config file");
    x->add_option("--preset", xa.preset, "Preset name")
        ->check(CLI::IsMember({"table1", "table2", "table3", "fig5", "fig6"}));
    x->add_option("--preset-dir", xa.preset_dir, "Directory holding preset JSON files");
    x->add_option("--out-dir", xa.out_dir, "Output directory");
    x->add_option("--seed", xa.seed, "Override the master seed");
    x->add_option("--R", xa.R, "Override the number of replications")->check(CLI::PositiveNumber);
    x->add_option("--B", xa.B, "Override the number of bootstrap draws")->check(CLI::PositiveNumber);
    x->add_option("--only", xa.only, "Run only the named experiments");
    x->add_option("--threads", xa.threads, "Worker threads")->default_val(hw);
    x->add_flag("--keep-paths", xa.keep_paths, "Store simulated and replication-0 bootstrap paths");
    x->add_flag("--quartiles", xa.quartiles, "Also write quartile curves of the sorted draws");
    x->add_flag("--quiet", xa.quiet, "No progress output");

    ReportArgs ra;
    auto* r = app.add_subcommand("report", "Tables and figure data from stored experiment outputs");
    r->add_option("inputs", ra.inputs, "Experiment directories (or a parent of several)")->required();
    r->add_option("--out-dir", ra.out_dir, "Output directory");
    r->add_option("--threads", ra.threads, "Worker threads")->default_val(hw);
    r->add_flag("--quartiles", ra.quartiles, "Also write quartile curves of the sorted draws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*s) return run_simulate(sim);
        if (*c) return run_acvf(ac);
        if (*f) return run_fit(fa);
        if (*b) return run_bootstrap(ba);
        if (*e) return run_edgeworth(ea);
        if (*x) return run_experiments(xa);
        if (*r) return run_report(ra);
    } catch (const ReplicationError& err) {
        std::fprintf(stderr, "numerical failure in replication %zu (seed %llu): %s\n", err.replication(),
                     static_cast<unsigned long long>(err.seed()), err.what());
        return kExitNumerical;
    } catch (const NumericalError& err) {
        std::fprintf(stderr, "numerical failure: %s\n", err.what());
        return kExitNumerical;
    } catch (const ConfigError& err) {
        std::fprintf(stderr, "config error: %s\n", err.what());
        return kExitConfig;
    } catch (const DomainError& err) {
        std::fprintf(stderr, "invalid argument: %s\n", err.what());
        return kExitConfig;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
