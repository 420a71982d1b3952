// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "sieveboot/acvf.hpp"
#include "sieveboot/ar_sieve.hpp"
#include "sieveboot/edgeworth.hpp"
#include "sieveboot/fracdiff.hpp"
#include "sieveboot/harness/density.hpp"
#include "sieveboot/harness/experiment.hpp"
#include "sieveboot/harness/report.hpp"
#include "sieveboot/levinson.hpp"
#include "sieveboot/random.hpp"
#include "sieveboot/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

using namespace sieveboot;
using namespace sieveboot::harness;

namespace {

unsigned g_threads = 1;
int g_failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
    std::printf("CRITERION %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void note(const char* fmt, auto... args) {
    std::printf("  ");
    std::printf(fmt, args...);
    std::printf("\n");
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BootstrapMethod method(BootstrapKind k) {
    BootstrapMethod m;
    m.kind = k;
    return m;
}

ExperimentResult run(const ExperimentConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    RunOptions opt;
    opt.threads = g_threads;
    ExperimentResult r = run_experiment(c, opt);
    note("[%s] R=%zu B=%zu done in %.1f s", c.name.c_str(), c.R, c.B, seconds_since(t0));
    return r;
}

const MethodResult& find_method(const ExperimentResult& r, BootstrapKind k) {
    for (const auto& m : r.methods)
        if (m.method.kind == k) return m;
    throw std::runtime_error("method missing");
}

double ratio_for_mean(const ExperimentResult& r, BootstrapKind k) {
    const auto acvf = arfima_acvf(r.config.spec, r.config.T - 1);
    return stdev_ratio(average_bootstrap_distribution(find_method(r, k).draws[0]), acvf, r.config.T);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Standard-deviation ratios of the bootstrap mean for six cells.
void criterion1() {
    struct Cell {
        double phi;
        std::size_t T;
        double d;
        double target;
    };
    const std::vector<Cell> cells{{0.3, 100, 0.0, 95.6}, {0.3, 100, 0.2, 57.2}, {0.3, 100, 0.3, 42.6},
                                  {0.3, 100, 0.4, 28.0}, {0.6, 500, 0.0, 99.1}, {0.6, 500, 0.4, 23.8}};
    bool ok = true;
    std::string detail;
    for (const Cell& c : cells) {
        ExperimentConfig cfg;
        cfg.name = fmt("c1_phi%.1f_T%zu_d%.1f", c.phi, c.T, c.d);
        cfg.spec = {c.d, c.phi, 1.0};
        cfg.T = c.T;
        cfg.R = 1000;
        cfg.B = 1000;
        cfg.seed = 1001;
        const double got = ratio_for_mean(run(cfg), BootstrapKind::sbs);
        const bool pass = std::abs(got - c.target) <= 5.0;
        ok = ok && pass;
        note("phi=%.1f T=%zu d=%.1f ratio=%.1f%% target=%.1f%% %s", c.phi, c.T, c.d, got, c.target,
             pass ? "ok" : "OUT");
        detail += fmt("%.1f/%.1f ", got, c.target);
    }
    verdict(1, ok, "SBS stdev ratio (got/target, tol 5pp): " + detail);
}

// d = 0.4, T = 500 runs shared by criteria 2 and 5.
std::map<double, ExperimentResult> g_d04;

void run_d04() {
    for (double phi : {0.3, 0.6}) {
        ExperimentConfig cfg;
        cfg.name = fmt("c25_phi%.1f_T500_d0.4", phi);
        cfg.spec = {0.4, phi, 1.0};
        cfg.T = 500;
        cfg.R = 1000;
        cfg.B = 1000;
        cfg.seed = 1003;
        cfg.statistics = {statistic_from_string("mean")};
        for (std::size_t k : {1, 3, 6, 9}) cfg.statistics.push_back({StatisticKind::acf, k});
        cfg.methods = {method(BootstrapKind::sbs), method(BootstrapKind::pfsbs), method(BootstrapKind::fpfbs)};
        g_d04.emplace(phi, run(cfg));
    }
}

void criterion2() {
    bool ok = true;
    std::string detail;
    for (const auto& [phi, r] : g_d04) {
        const double pf = ratio_for_mean(r, BootstrapKind::pfsbs);
        const double sb = ratio_for_mean(r, BootstrapKind::sbs);
        const bool pass = pf >= 55.0 && pf <= 90.0 && sb < 35.0;
        ok = ok && pass;
        note("d=0.4 T=500 phi=%.1f: PFSBS %.1f%% SBS %.1f%% %s", phi, pf, sb, pass ? "ok" : "OUT");
        detail += fmt("phi%.1f PFSBS=%.1f%% SBS=%.1f%%; ", phi, pf, sb);
    }
    for (double phi : {0.3, 0.6}) {
        ExperimentConfig cfg;
        cfg.name = fmt("c2_phi%.1f_T500_d0.0", phi);
        cfg.spec = {0.0, phi, 1.0};
        cfg.T = 500;
        cfg.R = 1000;
        cfg.B = 1000;
        cfg.seed = 1002;
        cfg.methods = {method(BootstrapKind::fpfbs)};
        const double fp = ratio_for_mean(run(cfg), BootstrapKind::fpfbs);
        const bool pass = fp > 300.0;
        ok = ok && pass;
        note("d=0 T=500 phi=%.1f: FPFBS %.1f%% %s", phi, fp, pass ? "ok" : "OUT");
        detail += fmt("phi%.1f d0 FPFBS=%.1f%%; ", phi, fp);
    }
    verdict(2, ok, detail);
}

// Mean autocovariance bias against -omega^2 T^{2d-1}.
void criterion3() {
    const std::size_t T = 1000, R = 1000, K = 50;
    bool ok = true;
    std::string detail;
    for (double d : {0.3, 0.4}) {
        const auto g = fn_acvf(d, 1.0, T - 1);
        const GaussianSimulator sim(g, T);
        std::vector<std::vector<double>> bias(R, std::vector<double>(K + 1));
        parallel_for(R, g_threads, [&](std::size_t i) {
            RandomStream rng = replication_stream(3003, i, StreamPurpose::simulate, "path");
            const auto y = sim.draw(rng);
            const auto est = sample_acvf_all(y, K, AcvfDivisor::T_minus_k, Centering::sample_mean);
            for (std::size_t k = 0; k <= K; ++k) bias[i][k] = est[k] - g[k];
        });
        double avg = 0.0;
        for (std::size_t k = 5; k <= K; ++k) {
            double m = 0.0;
            for (const auto& b : bias) m += b[k];
            avg += m / R;
        }
        avg /= static_cast<double>(K - 4);
        const double target = asymptotics({d, 0.0, 1.0}, T).acvf_bias;
        const double rel = std::abs(avg - target) / std::abs(target);
        const bool pass = rel <= 0.15;
        ok = ok && pass;
        note("d=%.1f mean bias k=5..50 %.5f, asymptotic %.5f, rel err %.3f %s", d, avg, target, rel,
             pass ? "ok" : "OUT");
        detail += fmt("d%.1f rel=%.3f; ", d, rel);
    }
    verdict(3, ok, "autocovariance bias within 15%: " + detail);
}

// Edgeworth CDF of the zero-mean autocorrelation against MC and averaged SBS.
void criterion4() {
    const std::size_t T = 500;
    const double d = 0.08;
    const std::vector<std::size_t> lags{1, 3, 6, 9};
    double worst_mc = 0.0, worst_sbs = 0.0;
    for (double phi : {0.3, 0.6}) {
        const ArfimaSpec spec{d, phi, 1.0};
        const auto g = arfima_acvf(spec, T - 1);

        ExperimentConfig mc;
        mc.name = fmt("c4_mc_phi%.1f", phi);
        mc.spec = spec;
        mc.T = T;
        mc.R = 10000;
        mc.B = 1;
        mc.seed = 4004;
        mc.statistics.clear();
        for (std::size_t k : lags) mc.statistics.push_back({StatisticKind::acf0, k});
        RunOptions opt;
        opt.threads = g_threads;
        const auto t0 = std::chrono::steady_clock::now();
        const auto mc_values = run_monte_carlo(mc, opt);
        note("[%s] R=%zu done in %.1f s", mc.name.c_str(), mc.R, seconds_since(t0));

        ExperimentConfig bs = mc;
        bs.name = fmt("c4_sbs_phi%.1f", phi);
        bs.R = 1000;
        bs.B = 1000;
        bs.seed = phi < 0.5 ? 1005 : 1006;
        const ExperimentResult sbs = run(bs);

        for (std::size_t s = 0; s < lags.size(); ++s) {
            EdgeworthOptions eo;
            eo.trace_polynomial = true;
            eo.threads = g_threads;
            const EdgeworthEvaluator ev(lags[s], g, T, d, eo);
            const auto grid = default_rho0_grid(ev, 8.0);
            const DensityEstimate ew = from_edgeworth(edgeworth_density_rho0(ev, grid));
            const double d_mc = ks_distance(mc_values[s], ew);
            const double d_sbs = ks_distance(average_bootstrap_distribution(sbs.methods[0].draws[s]), ew);
            worst_mc = std::max(worst_mc, d_mc);
            worst_sbs = std::max(worst_sbs, d_sbs);
            note("phi=%.1f k=%zu sup|EW-MC|=%.4f sup|EW-SBS|=%.4f", phi, lags[s], d_mc, d_sbs);
        }
    }
    verdict(4, worst_mc < 0.03 && worst_sbs < 0.03,
            fmt("max sup-distance Edgeworth vs MC %.4f, vs averaged SBS %.4f (tol 0.03)", worst_mc, worst_sbs));
}

// GoF orderings at d = 0.4, T = 500.
void criterion5() {
    bool pf_beats_sbs = true, fp_never_beats_pf = true;
    for (const auto& [phi, r] : g_d04) {
        ReportOptions ro;
        ro.threads = g_threads;
        const ExperimentReport rep = build_report(r, ro);
        std::map<std::string, std::map<std::string, GofReport>> by;  // statistic -> method label
        for (const auto& row : rep.gof) by[row.statistic][row.method] = row.report;
        for (const auto& [stat, m] : by) {
            const GofReport &s = m.at("sbs"), &p = m.at("pfsbs"), &f = m.at("fpfbs");
            const double rr = p.rmsd / s.rmsd, rk = p.kld / s.kld, rg = p.gini / s.gini;
            const bool a = rr < 1 && rk < 1 && rg < 1;
            const bool b = f.rmsd >= p.rmsd && f.kld >= p.kld && f.gini >= p.gini;
            pf_beats_sbs = pf_beats_sbs && a;
            fp_never_beats_pf = fp_never_beats_pf && b;
            note("phi=%.1f %s PFSBS/SBS rmsd %.3f kld %.3f gini %.3f | FPFBS/PFSBS rmsd %.3f kld %.3f gini %.3f%s",
                 phi, stat.c_str(), rr, rk, rg, f.rmsd / p.rmsd, f.kld / p.kld, f.gini / p.gini,
                 a && b ? "" : "  <-- violates");
        }
    }
    verdict(5, pf_beats_sbs && fp_never_beats_pf,
            fmt("PFSBS/SBS < 1 everywhere: %s; FPFBS never beats PFSBS: %s", pf_beats_sbs ? "yes" : "no",
                fp_never_beats_pf ? "yes" : "no"));
}

// Deterministic identities, timed as one block.
void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> failed;
    auto check = [&](bool ok, const char* what) {
        if (!ok) failed.emplace_back(what);
    };

    {
        RandomStream rng(6, 0);
        std::vector<double> y(300);
        for (auto& v : y) v = rng.normal();
        double worst = 0.0;
        for (double d : {0.4, -0.3, 0.45}) {
            const auto back = apply_frac_filter(apply_frac_filter(y, d), -d);
            for (std::size_t t = 0; t < y.size(); ++t) worst = std::max(worst, std::abs(back[t] - y[t]));
        }
        check(worst < 1e-10, "fracdiff round trip");
    }
    {
        const double d = 0.3;
        const auto f = frac_coeffs(-d, 1000000);
        double s = 0.0;
        for (double a : f.coeffs) s += a * a;
        const double target = std::tgamma(1.0 - 2.0 * d) / std::pow(std::tgamma(1.0 - d), 2);
        check(std::abs(s / target - 1.0) < 0.01, "Parseval partial sum");
    }
    {
        double worst = 0.0;
        for (double phi : {0.3, 0.6}) {
            const auto y = arfima_acvf({0.3, phi, 1.0}, 51);
            const auto w = fn_acvf(0.3, 1.0, 51);
            worst = std::max(worst, std::abs(((1 + phi * phi) * y[0] - 2 * phi * y[1]) / w[0] - 1.0));
            for (std::size_t k = 1; k <= 50; ++k)
                worst = std::max(worst, std::abs(((1 + phi * phi) * y[k] - phi * (y[k + 1] + y[k - 1])) / w[k] - 1.0));
        }
        check(worst < 1e-8, "ARFIMA filter identity");
    }
    {
        const auto g = arfima_acvf({0.4, 0.6, 1.0}, 30);
        const std::size_t h = 20;
        const auto sol = levinson_solve(g, h);
        double worst = std::abs(g[0] + [&] {
            double s = 0;
            for (std::size_t j = 1; j <= h; ++j) s += sol.phi[j - 1] * g[j];
            return s;
        }() - sol.sigma2);
        for (std::size_t k = 1; k <= h; ++k) {
            double s = g[k];
            for (std::size_t j = 1; j <= h; ++j)
                s += sol.phi[j - 1] * g[static_cast<std::size_t>(std::abs(static_cast<long>(j) - static_cast<long>(k)))];
            worst = std::max(worst, std::abs(s));
        }
        check(worst < 1e-10, "Yule-Walker residual");
    }
    {
        const std::size_t T = 24, k = 2;
        const auto g = arfima_acvf({0.08, 0.3, 1.0}, T - 1);
        const ToeplitzCov cov = ToeplitzCov::from_acvf(g, T);
        const Eigen::MatrixXd B = build_B(T, k, g.rho(k), 0.7);
        const auto kappa = quadform_cumulants(B, cov, 4);
        const Eigen::MatrixXd L = cov.sigma.llt().matrixL();
        const Eigen::VectorXd lam = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(L.transpose() * B * L).eigenvalues();
        const double fac[] = {1, 2, 8, 48};
        double worst = 0.0;
        for (int r = 1; r <= 4; ++r) {
            const double oracle = fac[r - 1] * lam.array().pow(r).sum();
            worst = std::max(worst, std::abs(kappa[r - 1] - oracle) / std::max(1.0, std::abs(oracle)));
        }
        check(worst < 1e-8, "cumulant trace vs eigenvalues");
    }
    {
        // Cumulants of a Gaussian: eta3 = eta4 = 0.
        const auto p = edgeworth_from_cumulants({-0.4, 2.0, 0.0, 0.0});
        const double u = 0.4 / std::sqrt(2.0);
        check(std::abs(p.cdf - 0.5 * std::erfc(-u / std::sqrt(2.0))) < 1e-14, "Edgeworth Gaussian reduction");
    }
    {
        const auto g = fn_acvf(0.0, 1.0, 99);
        check(std::abs(edgeworth_cdf_W(0.0, 1, g, 100, 0.0).cdf - 0.5) < 1e-12, "white-noise centre");
    }
    check(aic_search_cap(500) == 38, "M_T(500)");
    {
        using V = std::vector<std::vector<double>>;
        check(average_bootstrap_distribution(V{{3, 1, 2}}) == std::vector<double>{1, 2, 3} &&
                  average_bootstrap_distribution(V{{5, 4}, {5, 4}, {5, 4}}) == std::vector<double>{4, 5} &&
                  average_bootstrap_distribution(V{{1, 3}, {5, 7}}) == std::vector<double>{3, 5},
              "average bootstrap distribution");
    }

    const double secs = seconds_since(t0);
    std::string detail = fmt("%zu checks, %.3f s", std::size_t{9}, secs);
    for (const auto& f : failed) detail += "; failed: " + f;
    verdict(6, failed.empty() && secs < 1.0, detail);
}

// Log-log slope of the median squared YW coefficient error.
void criterion7() {
    const std::size_t h = 5, R = 200;
    const std::vector<std::size_t> lengths{250, 1000, 4000};
    bool ok = true;
    std::string detail;
    for (double d : {0.0, 0.4}) {
        const LevinsonSolution truth = levinson_solve(fn_acvf(d, 1.0, h), h);
        std::vector<double> lx, ly;
        for (std::size_t T : lengths) {
            const GaussianSimulator sim(fn_acvf(d, 1.0, T - 1), T);
            std::vector<double> err(R);
            parallel_for(R, g_threads, [&](std::size_t i) {
                RandomStream rng = replication_stream(7007 + T, i, StreamPurpose::simulate, "path");
                const auto y = sim.draw(rng);
                err[i] = yw_coefficient_error(fit(y, h, SieveMethod::yule_walker), truth);
            });
            std::nth_element(err.begin(), err.begin() + R / 2, err.end());
            const double med = 0.5 * (err[R / 2] + *std::max_element(err.begin(), err.begin() + R / 2));
            lx.push_back(std::log(static_cast<double>(T)));
            ly.push_back(std::log(med));
            note("d=%.1f T=%zu median error %.3e", d, T, med);
        }
        const double mx = (lx[0] + lx[1] + lx[2]) / 3, my = (ly[0] + ly[1] + ly[2]) / 3;
        double sxy = 0, sxx = 0;
        for (int i = 0; i < 3; ++i) {
            sxy += (lx[i] - mx) * (ly[i] - my);
            sxx += (lx[i] - mx) * (lx[i] - mx);
        }
        const double slope = sxy / sxx, target = -(1.0 - 2.0 * d);
        const bool pass = std::abs(slope - target) <= 0.25;
        ok = ok && pass;
        note("d=%.1f slope %.3f target %.3f %s", d, slope, target, pass ? "ok" : "OUT");
        detail += fmt("d%.1f slope=%.3f (target %.2f); ", d, slope, target);
    }
    verdict(7, ok, detail);
}

}  // namespace

int main() {
    g_threads = std::max(1u, std::thread::hardware_concurrency());
    std::printf("threads: %u\n", g_threads);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        criterion6();
        criterion7();
        criterion3();
        criterion1();
        run_d04();
        criterion2();
        criterion5();
        criterion4();
    } catch (const std::exception& e) {
        std::printf("aborted: %s\n", e.what());
        return 2;
    }
    std::printf("total %.0f s, %d criterion(s) failed\n", seconds_since(t0), g_failures);
    return g_failures == 0 ? 0 : 1;
}
