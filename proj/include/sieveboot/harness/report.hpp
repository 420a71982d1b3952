#pragma once

#include "sieveboot/harness/density.hpp"
#include "sieveboot/harness/experiment.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace sieveboot::harness {

struct StdevRatioRow {
    std::string experiment;
    double d = 0.0;
    double phi = 0.0;
    std::size_t T = 0;
    std::string method;
    double ratio = 0.0;        // percent
    double mean_h = 0.0;
    double mean_d_pre = 0.0;
    double clamped_share = 0.0;
};

struct GofRow {
    std::string experiment;
    double d = 0.0;
    double phi = 0.0;
    std::size_t T = 0;
    std::string statistic;
    std::string method;
    GofReport report;
};

/// Densities of one statistic on a shared grid.
struct DensityPanel {
    std::string experiment;
    std::string statistic;
    double true_value = 0.0;
    std::vector<double> x;
    std::vector<DensityEstimate> curves;          // MC first, then methods, then references
    std::vector<std::string> names;
    std::vector<std::vector<double>> quartiles;   // per method: q = 0.25, 0.5, 0.75 curves of sorted draws
};

struct ExperimentReport {
    std::vector<StdevRatioRow> stdev;
    std::vector<GofRow> gof;
    std::vector<DensityPanel> panels;
};

struct ReportOptions {
    bool edgeworth = true;    // acf0 panels when d < 0.1
    bool quartiles = false;
    unsigned threads = 1;
};

/// Stdev ratios for the mean, GoF of each averaged bootstrap density against
/// the MC density for autocorrelations, and density panels for every statistic.
ExperimentReport build_report(const ExperimentResult& result, const ReportOptions& options = {});

void merge_into(ExperimentReport& into, ExperimentReport&& from);

/// stdev_ratio.csv, gof.csv, gof_relative.csv, density_<experiment>_<stat>.csv.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace sieveboot::harness
