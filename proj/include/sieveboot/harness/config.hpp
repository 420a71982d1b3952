#pragma once

#include "sieveboot/acvf.hpp"
#include "sieveboot/bootstrap.hpp"

#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace sieveboot::harness {

enum class StatisticKind { mean, renorm_mean, acf, acf0 };

struct StatisticSpec {
    StatisticKind kind = StatisticKind::mean;
    std::size_t lag = 0;  // acf and acf0 only

    /// "mean", "renorm_mean", "acf3", "acf0_9".
    std::string name() const;
};

StatisticSpec statistic_from_string(const std::string& s);

/// Statistic of an observed path. `d` is only used by renorm_mean, whose
/// population mean is zero both for simulated and for bootstrap paths.
double compute_statistic(const StatisticSpec& stat, std::span<const double> series, double d);

struct ExperimentConfig {
    std::string name = "experiment";
    ArfimaSpec spec;
    std::size_t T = 100;
    std::size_t R = 1000;
    std::size_t B = 1000;
    std::vector<StatisticSpec> statistics{StatisticSpec{}};
    std::vector<BootstrapMethod> methods{BootstrapMethod{}};
    std::uint64_t seed = 20240101;
    /// Multiplier on the Silverman rule; 1 gives 1.06 min(sd, IQR/1.349) n^{-1/5}.
    double bandwidth_scale = 1.0;
    std::size_t grid_points = 512;
    bool keep_paths = false;

    /// Throws ConfigError.
    void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);
nlohmann::json to_json(const BootstrapMethod& m);
BootstrapMethod method_from_json(const nlohmann::json& j);

/// A file holds either one experiment object or {"experiments": [...]}.
std::vector<ExperimentConfig> load_configs(const std::filesystem::path& path);
std::vector<ExperimentConfig> configs_from_json(const nlohmann::json& j);

/// Hex FNV-1a of the canonical JSON dump.
std::string config_hash(const ExperimentConfig& c);

}  // namespace sieveboot::harness
