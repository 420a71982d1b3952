#include "sieveboot/harness/report.hpp"

#include "sieveboot/harness/io.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sieveboot::harness {

namespace {

double true_value(const StatisticSpec& stat, const AcvfSequence& acvf) {
    switch (stat.kind) {
        case StatisticKind::mean:
        case StatisticKind::renorm_mean: return 0.0;
        case StatisticKind::acf:
        case StatisticKind::acf0: return acvf.rho(stat.lag);
    }
    return 0.0;
}

DensityPanel make_panel(const ExperimentResult& result, std::size_t s, const AcvfSequence& acvf,
                        const std::vector<std::vector<double>>& averaged, const ReportOptions& options) {
    const ExperimentConfig& c = result.config;
    const StatisticSpec& stat = c.statistics[s];
    DensityPanel panel;
    panel.experiment = c.name;
    panel.statistic = stat.name();
    panel.true_value = true_value(stat, acvf);

    std::vector<std::span<const double>> samples{result.mc[s]};
    for (const auto& a : averaged) samples.emplace_back(a);
    double lo = INFINITY, hi = -INFINITY, hmax = 0.0;
    std::vector<double> bandwidths;
    for (const auto& smp : samples) {
        const double h = c.bandwidth_scale * silverman_bandwidth(smp);
        bandwidths.push_back(h);
        hmax = std::max(hmax, h);
        const auto [a, b] = std::minmax_element(smp.begin(), smp.end());
        lo = std::min(lo, *a);
        hi = std::max(hi, *b);
    }
    lo -= 5.0 * hmax;
    hi += 5.0 * hmax;
    panel.x.resize(c.grid_points);
    for (std::size_t i = 0; i < c.grid_points; ++i)
        panel.x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(c.grid_points - 1);

    panel.curves.push_back(kde(result.mc[s], panel.x, bandwidths[0], DensitySource::mc));
    panel.names.push_back("MC");
    for (std::size_t m = 0; m < averaged.size(); ++m) {
        panel.curves.push_back(kde(averaged[m], panel.x, bandwidths[m + 1],
                                   density_source_for(result.methods[m].method.kind)));
        panel.names.push_back(result.methods[m].method.label());
    }
    const double var_mean = exact_mean_variance(acvf, c.T);
    if (stat.kind == StatisticKind::mean) {
        panel.curves.push_back(normal_density(panel.x, 0.0, var_mean));
        panel.names.push_back("exact_normal");
    } else if (stat.kind == StatisticKind::renorm_mean) {
        const double scale = std::pow(static_cast<double>(c.T), 1.0 - 2.0 * c.spec.d);
        panel.curves.push_back(normal_density(panel.x, 0.0, scale * var_mean));
        panel.names.push_back("exact_normal");
    } else if (stat.kind == StatisticKind::acf0 && options.edgeworth && c.spec.d < 0.1) {
        EdgeworthOptions eo;
        eo.trace_polynomial = true;
        eo.threads = options.threads;
        const EdgeworthCurve curve = edgeworth_density_rho0(stat.lag, acvf, c.T, c.spec.d, panel.x, eo);
        panel.curves.push_back(from_edgeworth(curve));
        panel.names.push_back("edgeworth");
    }
    if (options.quartiles) {
        for (const auto& mr : result.methods)
            for (double q : {0.25, 0.5, 0.75}) panel.quartiles.push_back(bootstrap_quantile_curve(mr.draws[s], q));
    }
    return panel;
}

}  // namespace

ExperimentReport build_report(const ExperimentResult& result, const ReportOptions& options) {
    const ExperimentConfig& c = result.config;
    const AcvfSequence acvf = arfima_acvf(c.spec, c.T - 1);
    ExperimentReport rep;
    for (std::size_t s = 0; s < c.statistics.size(); ++s) {
        const StatisticSpec& stat = c.statistics[s];
        std::vector<std::vector<double>> averaged;
        for (const auto& mr : result.methods) averaged.push_back(average_bootstrap_distribution(mr.draws[s]));

        if (stat.kind == StatisticKind::mean) {
            for (std::size_t m = 0; m < result.methods.size(); ++m) {
                const MethodResult& mr = result.methods[m];
                StdevRatioRow row{c.name, c.spec.d, c.spec.phi, c.T, mr.method.label(),
                                  stdev_ratio(averaged[m], acvf, c.T)};
                for (const auto& f : mr.fits) {
                    row.mean_h += static_cast<double>(f.h);
                    row.mean_d_pre += f.d_pre;
                    row.clamped_share += f.clamped ? 1.0 : 0.0;
                }
                const double n = static_cast<double>(mr.fits.size());
                row.mean_h /= n;
                row.mean_d_pre /= n;
                row.clamped_share /= n;
                rep.stdev.push_back(row);
            }
        }
        DensityPanel panel = make_panel(result, s, acvf, averaged, options);
        if (stat.kind == StatisticKind::acf || stat.kind == StatisticKind::acf0) {
            for (std::size_t m = 0; m < result.methods.size(); ++m)
                rep.gof.push_back(GofRow{c.name, c.spec.d, c.spec.phi, c.T, stat.name(),
                                         result.methods[m].method.label(),
                                         gof_measures(panel.curves[m + 1], panel.curves[0], result.mc[s])});
        }
        rep.panels.push_back(std::move(panel));
    }
    return rep;
}

void merge_into(ExperimentReport& into, ExperimentReport&& from) {
    std::move(from.stdev.begin(), from.stdev.end(), std::back_inserter(into.stdev));
    std::move(from.gof.begin(), from.gof.end(), std::back_inserter(into.gof));
    std::move(from.panels.begin(), from.panels.end(), std::back_inserter(into.panels));
}

void write_report(const ExperimentReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        CsvWriter w(dir / "stdev_ratio.csv",
                    {"experiment", "d", "phi", "T", "method", "ratio_percent", "mean_h", "mean_d_pre", "clamped_share"});
        for (const auto& r : report.stdev) {
            w.cell(r.experiment).cell(r.d).cell(r.phi).cell(r.T).cell(r.method).cell(r.ratio).cell(r.mean_h)
                .cell(r.mean_d_pre).cell(r.clamped_share);
            w.end_row();
        }
    }
    {
        CsvWriter w(dir / "gof.csv",
                    {"experiment", "d", "phi", "T", "statistic", "method", "rmsd", "kld", "gini", "clipped"});
        for (const auto& r : report.gof) {
            w.cell(r.experiment).cell(r.d).cell(r.phi).cell(r.T).cell(r.statistic).cell(r.method)
                .cell(r.report.rmsd).cell(r.report.kld).cell(r.report.gini).cell(r.report.clipped);
            w.end_row();
        }
    }
    {
        // Each non-SBS measure relative to SBS in the same experiment and statistic.
        std::map<std::pair<std::string, std::string>, const GofRow*> sbs;
        for (const auto& r : report.gof)
            if (r.method == "sbs") sbs[{r.experiment, r.statistic}] = &r;
        CsvWriter w(dir / "gof_relative.csv",
                    {"experiment", "d", "phi", "T", "statistic", "method", "rmsd_ratio", "kld_ratio", "gini_ratio"});
        for (const auto& r : report.gof) {
            const auto it = sbs.find({r.experiment, r.statistic});
            if (r.method == "sbs" || it == sbs.end()) continue;
            const GofReport& base = it->second->report;
            w.cell(r.experiment).cell(r.d).cell(r.phi).cell(r.T).cell(r.statistic).cell(r.method)
                .cell(r.report.rmsd / base.rmsd).cell(r.report.kld / base.kld).cell(r.report.gini / base.gini);
            w.end_row();
        }
    }
    for (const auto& p : report.panels) {
        std::vector<std::string> header{"x"};
        for (const auto& n : p.names) {
            header.push_back(n + "_pdf");
            header.push_back(n + "_cdf");
        }
        CsvWriter w(dir / ("density_" + p.experiment + "_" + p.statistic + ".csv"), header);
        for (std::size_t i = 0; i < p.x.size(); ++i) {
            w.cell(p.x[i]);
            for (const auto& c : p.curves) w.cell(c.pdf[i]).cell(c.cdf[i]);
            w.end_row();
        }
        if (!p.quartiles.empty()) {
            std::vector<std::string> qh{"draw"};
            std::size_t m = 0;
            for (std::size_t j = 1; j < p.names.size() && m * 3 < p.quartiles.size(); ++j, ++m)
                for (const char* q : {"_q25", "_q50", "_q75"}) qh.push_back(p.names[j] + q);
            CsvWriter q(dir / ("quartiles_" + p.experiment + "_" + p.statistic + ".csv"), qh);
            for (std::size_t b = 0; b < p.quartiles.front().size(); ++b) {
                q.cell(b);
                for (const auto& curve : p.quartiles) q.cell(curve[b]);
                q.end_row();
            }
        }
    }
}

}  // namespace sieveboot::harness
