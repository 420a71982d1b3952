#pragma once

#include "sieveboot/harness/experiment.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace sieveboot::harness {

/// Comma-separated output with a header row; doubles at full round-trip precision.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& cell(const std::string& v);
    CsvWriter& cell(double v);
    CsvWriter& cell(std::size_t v);
    void end_row();

private:
    std::ofstream file_;
    std::size_t columns_;
    std::size_t filled_ = 0;
    std::filesystem::path path_;
};

std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

std::string software_version();

/// Manifest for any output directory: tool version, seed, config and its hash.
nlohmann::json make_manifest(const std::string& command, std::uint64_t seed,
                             const nlohmann::json& config);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Layout under `dir`:
///   manifest.json                    config, hash, seed, version
///   mc_<stat>.csv                    replication,value
///   draws_<method>_<stat>.csv        replication,draw,value
///   draws_<method>.json              method, stream seeds, h and d_pre per replication
///   paths_simulated.csv, paths_<method>_rep0.csv   with keep_paths
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);
ExperimentResult read_experiment(const std::filesystem::path& dir);

}  // namespace sieveboot::harness
