#include "sieveboot/harness/experiment.hpp"

#include "sieveboot/errors.hpp"
#include "sieveboot/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace sieveboot::harness {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mutex;
    std::size_t failed_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr failure;

    // Indices are claimed in increasing order, so every index below a failing
    // one has already been claimed and runs to completion; the lowest failure
    // is therefore the same for any thread count.
    auto worker = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(mutex);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
                stop = true;
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

namespace {

RandomStream simulation_stream(const ExperimentConfig& c, std::size_t i) {
    return replication_stream(c.seed, i, StreamPurpose::simulate, "path");
}

RandomStream bootstrap_stream(const ExperimentConfig& c, std::size_t i, const BootstrapMethod& m) {
    return replication_stream(c.seed, i, StreamPurpose::bootstrap, m.label());
}

template <class Fn>
void guarded(const ExperimentConfig& c, std::size_t i, Fn&& fn) {
    try {
        fn();
    } catch (const ReplicationError&) {
        throw;
    } catch (const std::exception& e) {
        throw ReplicationError(i, c.seed, e.what());
    }
}

}  // namespace

std::vector<std::vector<double>> run_monte_carlo(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const AcvfSequence acvf = arfima_acvf(config.spec, config.T - 1);
    const GaussianSimulator sim(acvf, config.T);
    std::vector<std::vector<double>> mc(config.statistics.size(), std::vector<double>(config.R));
    std::atomic<std::size_t> done{0};
    parallel_for(config.R, options.threads, [&](std::size_t i) {
        guarded(config, i, [&] {
            RandomStream rng = simulation_stream(config, i);
            const std::vector<double> y = sim.draw(rng);
            for (std::size_t s = 0; s < config.statistics.size(); ++s)
                mc[s][i] = compute_statistic(config.statistics[s], y, config.spec.d);
        });
        if (options.progress) options.progress(++done);
    });
    return mc;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    const std::size_t R = config.R;
    const std::size_t B = config.B;
    const std::size_t T = config.T;
    const std::size_t S = config.statistics.size();
    const AcvfSequence acvf = arfima_acvf(config.spec, T - 1);
    const GaussianSimulator sim(acvf, T);

    ExperimentResult result;
    result.config = config;
    result.mc.assign(S, std::vector<double>(R));
    for (const auto& m : config.methods) {
        MethodResult mr;
        mr.method = m;
        mr.draws.assign(S, DrawMatrix(R, B));
        mr.fits.resize(R);
        result.methods.push_back(std::move(mr));
    }
    if (config.keep_paths) {
        result.simulated_paths = DrawMatrix(R, T);
        result.bootstrap_paths.assign(config.methods.size(), DrawMatrix(B, T));
    }

    std::atomic<std::size_t> done{0};
    parallel_for(R, options.threads, [&](std::size_t i) {
        guarded(config, i, [&] {
            RandomStream sim_rng = simulation_stream(config, i);
            const std::vector<double> y = sim.draw(sim_rng);
            if (config.keep_paths) std::copy(y.begin(), y.end(), result.simulated_paths.row(i).begin());
            for (std::size_t s = 0; s < S; ++s)
                result.mc[s][i] = compute_statistic(config.statistics[s], y, config.spec.d);

            std::vector<double> path(T);
            for (std::size_t m = 0; m < config.methods.size(); ++m) {
                MethodResult& mr = result.methods[m];
                const BootstrapGenerator gen(y, mr.method);
                mr.fits[i] = ReplicationFit{gen.fit().h, gen.prefilter().d, gen.prefilter().raw,
                                            gen.prefilter().clamped};
                RandomStream rng = bootstrap_stream(config, i, mr.method);
                for (std::size_t b = 0; b < B; ++b) {
                    gen.draw(rng, path);
                    for (std::size_t s = 0; s < S; ++s)
                        mr.draws[s](i, b) = compute_statistic(config.statistics[s], path, config.spec.d);
                    if (config.keep_paths && i == 0)
                        std::copy(path.begin(), path.end(), result.bootstrap_paths[m].row(b).begin());
                }
            }
        });
        if (options.progress) options.progress(++done);
    });
    return result;
}

std::vector<double> average_bootstrap_distribution(const DrawMatrix& draws) {
    if (draws.rows == 0 || draws.cols == 0) throw DomainError("average_bootstrap_distribution: empty draws");
    if (draws.data.size() != draws.rows * draws.cols)
        throw DomainError("average_bootstrap_distribution: ragged draws");
    std::vector<double> avg(draws.cols, 0.0);
    std::vector<double> sorted(draws.cols);
    for (std::size_t i = 0; i < draws.rows; ++i) {
        const auto r = draws.row(i);
        std::copy(r.begin(), r.end(), sorted.begin());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t j = 0; j < draws.cols; ++j) avg[j] += sorted[j];
    }
    for (auto& v : avg) v /= static_cast<double>(draws.rows);
    return avg;
}

std::vector<double> average_bootstrap_distribution(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty())
        throw DomainError("average_bootstrap_distribution: empty draws");
    DrawMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols) throw DomainError("average_bootstrap_distribution: ragged draws");
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return average_bootstrap_distribution(m);
}

std::vector<double> bootstrap_quantile_curve(const DrawMatrix& draws, double q) {
    if (draws.rows == 0 || draws.cols == 0) throw DomainError("bootstrap_quantile_curve: empty draws");
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("bootstrap_quantile_curve: q must lie in [0, 1]");
    DrawMatrix sorted = draws;
    for (std::size_t i = 0; i < sorted.rows; ++i) std::sort(sorted.row(i).begin(), sorted.row(i).end());
    std::vector<double> out(draws.cols);
    std::vector<double> column(draws.rows);
    for (std::size_t j = 0; j < draws.cols; ++j) {
        for (std::size_t i = 0; i < draws.rows; ++i) column[i] = sorted(i, j);
        std::sort(column.begin(), column.end());
        out[j] = sorted_quantile(column, q);
    }
    return out;
}

double stdev_ratio(std::span<const double> averaged_draws, const AcvfSequence& acvf, std::size_t T) {
    if (averaged_draws.size() < 2) throw DomainError("stdev_ratio: need at least two draws");
    const double n = static_cast<double>(averaged_draws.size());
    double mean = 0.0;
    for (double v : averaged_draws) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : averaged_draws) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    return 100.0 * sd / std::sqrt(exact_mean_variance(acvf, T));
}

}  // namespace sieveboot::harness
