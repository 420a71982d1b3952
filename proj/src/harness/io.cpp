#include "sieveboot/harness/io.hpp"

#include "sieveboot/errors.hpp"
#include "sieveboot/random.hpp"

#include <charconv>
#include <sstream>

#ifndef SIEVEBOOT_VERSION
#define SIEVEBOOT_VERSION "0.0.0"
#endif

namespace sieveboot::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const fs::path& path, const std::vector<std::string>& header)
    : file_(path), columns_(header.size()), path_(path) {
    if (!file_) throw std::runtime_error("cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) file_ << (i ? "," : "") << header[i];
    file_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& v) {
    file_ << (filled_++ ? "," : "") << v;
    return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(std::size_t v) { return cell(std::to_string(v)); }

void CsvWriter::end_row() {
    if (filled_ != columns_)
        throw std::logic_error(path_.string() + ": row has " + std::to_string(filled_) + " cells, expected " +
                               std::to_string(columns_));
    file_ << '\n';
    filled_ = 0;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ConfigError("missing CSV column '" + name + "'");
}

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) out.push_back(field);
        return out;
    };
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty file");
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        t.rows.push_back(split(line));
        if (t.rows.back().size() != t.header.size())
            throw ConfigError(path.string() + ": ragged row " + std::to_string(t.rows.size()));
    }
    return t;
}

std::string software_version() { return SIEVEBOOT_VERSION; }

json make_manifest(const std::string& command, std::uint64_t seed, const json& config) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a64(config.dump())));
    return json{{"tool", "sieveboot"},
                {"version", software_version()},
                {"command", command},
                {"seed", seed},
                {"config_hash", hash},
                {"config", config},
                {"compiler", __VERSION__}};
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw ConfigError("bad number '" + s + "'");
    return v;
}

std::size_t parse_index(const std::string& s) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw ConfigError("bad index '" + s + "'");
    return v;
}

void write_matrix(const fs::path& path, const DrawMatrix& m, const std::string& row_name) {
    CsvWriter w(path, {row_name, "t", "value"});
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            w.cell(i).cell(j + 1).cell(m(i, j));
            w.end_row();
        }
}

}  // namespace

void write_experiment(const ExperimentResult& result, const fs::path& dir) {
    const ExperimentConfig& c = result.config;
    fs::create_directories(dir);
    write_json(dir / "manifest.json", make_manifest("experiment", c.seed, to_json(c)));
    for (std::size_t s = 0; s < c.statistics.size(); ++s) {
        CsvWriter w(dir / ("mc_" + c.statistics[s].name() + ".csv"), {"replication", "value"});
        for (std::size_t i = 0; i < c.R; ++i) {
            w.cell(i).cell(result.mc[s][i]);
            w.end_row();
        }
    }
    for (const MethodResult& mr : result.methods) {
        const std::string label = mr.method.label();
        for (std::size_t s = 0; s < c.statistics.size(); ++s) {
            CsvWriter w(dir / ("draws_" + label + "_" + c.statistics[s].name() + ".csv"),
                        {"replication", "draw", "value"});
            const DrawMatrix& m = mr.draws[s];
            for (std::size_t i = 0; i < m.rows; ++i)
                for (std::size_t b = 0; b < m.cols; ++b) {
                    w.cell(i).cell(b).cell(m(i, b));
                    w.end_row();
                }
        }
        json keys = json::array(), h = json::array(), d_pre = json::array(), d_raw = json::array(),
             clamped = json::array();
        for (std::size_t i = 0; i < mr.fits.size(); ++i) {
            const RandomStream rng = replication_stream(c.seed, i, StreamPurpose::bootstrap, label);
            keys.push_back(rng.key());
            h.push_back(mr.fits[i].h);
            d_pre.push_back(mr.fits[i].d_pre);
            d_raw.push_back(mr.fits[i].d_raw);
            clamped.push_back(mr.fits[i].clamped);
        }
        write_json(dir / ("draws_" + label + ".json"),
                   json{{"method", to_json(mr.method)},
                        {"label", label},
                        {"master_seed", c.seed},
                        {"stream_keys", keys},
                        {"h", h},
                        {"d_pre", d_pre},
                        {"d_raw", d_raw},
                        {"clamped", clamped}});
    }
    if (c.keep_paths) {
        write_matrix(dir / "paths_simulated.csv", result.simulated_paths, "replication");
        for (std::size_t m = 0; m < result.methods.size(); ++m)
            write_matrix(dir / ("paths_" + result.methods[m].method.label() + "_rep0.csv"),
                         result.bootstrap_paths[m], "draw");
    }
}

ExperimentResult read_experiment(const fs::path& dir) {
    const json manifest = read_json(dir / "manifest.json");
    ExperimentResult result;
    result.config = configs_from_json(manifest.at("config")).front();
    const ExperimentConfig& c = result.config;
    for (const auto& stat : c.statistics) {
        const CsvTable t = read_csv(dir / ("mc_" + stat.name() + ".csv"));
        std::vector<double> v(c.R);
        if (t.rows.size() != c.R) throw ConfigError("mc_" + stat.name() + ".csv: expected R rows");
        const std::size_t ri = t.column("replication"), vi = t.column("value");
        for (const auto& row : t.rows) v.at(parse_index(row[ri])) = parse_double(row[vi]);
        result.mc.push_back(std::move(v));
    }
    for (const auto& method : c.methods) {
        MethodResult mr;
        mr.method = method;
        const std::string label = method.label();
        for (const auto& stat : c.statistics) {
            const CsvTable t = read_csv(dir / ("draws_" + label + "_" + stat.name() + ".csv"));
            if (t.rows.size() != c.R * c.B) throw ConfigError("draws file for " + label + " is incomplete");
            DrawMatrix m(c.R, c.B);
            const std::size_t ri = t.column("replication"), bi = t.column("draw"), vi = t.column("value");
            for (const auto& row : t.rows) {
                const std::size_t i = parse_index(row[ri]), b = parse_index(row[bi]);
                if (i >= c.R || b >= c.B) throw ConfigError("draw index out of range in " + label);
                m(i, b) = parse_double(row[vi]);
            }
            mr.draws.push_back(std::move(m));
        }
        const json side = read_json(dir / ("draws_" + label + ".json"));
        mr.fits.resize(c.R);
        for (std::size_t i = 0; i < c.R; ++i) {
            mr.fits[i].h = side.at("h").at(i).get<std::size_t>();
            mr.fits[i].d_pre = side.at("d_pre").at(i).get<double>();
            mr.fits[i].d_raw = side.at("d_raw").at(i).get<double>();
            mr.fits[i].clamped = side.at("clamped").at(i).get<bool>();
        }
        result.methods.push_back(std::move(mr));
    }
    return result;
}

}  // namespace sieveboot::harness
