#pragma once

#include "sieveboot/harness/config.hpp"
#include "sieveboot/levinson.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sieveboot::harness {

/// Dense row-major rows x cols array; one row per replication.
struct DrawMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    DrawMatrix() = default;
    DrawMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct ReplicationFit {
    std::size_t h = 0;
    double d_pre = 0.0;
    double d_raw = 0.0;
    bool clamped = false;
};

struct MethodResult {
    BootstrapMethod method;
    std::vector<DrawMatrix> draws;   // one R x B matrix per statistic
    std::vector<ReplicationFit> fits;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<std::vector<double>> mc;  // [statistic][replication]
    std::vector<MethodResult> methods;
    /// Only with keep_paths: every simulated path (R x T) and the bootstrap
    /// paths of replication 0 for each method (B x T).
    DrawMatrix simulated_paths;
    std::vector<DrawMatrix> bootstrap_paths;
};

struct RunOptions {
    unsigned threads = 1;
    /// Called from worker threads with the number of finished replications.
    std::function<void(std::size_t)> progress;
};

/// R replications; each simulates a path, evaluates every statistic, and for
/// every method draws B bootstrap paths. Streams depend only on
/// (seed, replication, method label), so results do not depend on the thread
/// count or on which other methods are configured.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// MC values only (no bootstrap), sharing the simulation streams of run_experiment.
std::vector<std::vector<double>> run_monte_carlo(const ExperimentConfig& config,
                                                 const RunOptions& options = {});

/// Sort each row ascending, then average columnwise.
std::vector<double> average_bootstrap_distribution(const DrawMatrix& draws);
std::vector<double> average_bootstrap_distribution(const std::vector<std::vector<double>>& rows);

/// Per-column q-quantiles of the row-sorted draws (across replications).
std::vector<double> bootstrap_quantile_curve(const DrawMatrix& draws, double q);

/// 100 sd(averaged distribution) / sqrt(Var ybar_T).
double stdev_ratio(std::span<const double> averaged_draws, const AcvfSequence& acvf, std::size_t T);

/// Execute fn(i) for i in [0, n) on a pool of worker threads. The first
/// exception (lowest index) is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace sieveboot::harness
