#include "sieveboot/harness/config.hpp"

#include "sieveboot/errors.hpp"
#include "sieveboot/random.hpp"
#include "sieveboot/stats.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>

namespace sieveboot::harness {

using nlohmann::json;

std::string StatisticSpec::name() const {
    switch (kind) {
        case StatisticKind::mean: return "mean";
        case StatisticKind::renorm_mean: return "renorm_mean";
        case StatisticKind::acf: return "acf_k" + std::to_string(lag);
        case StatisticKind::acf0: return "acf0_k" + std::to_string(lag);
    }
    return "?";
}

StatisticSpec statistic_from_string(const std::string& s) {
    if (s == "mean") return {StatisticKind::mean, 0};
    if (s == "renorm_mean") return {StatisticKind::renorm_mean, 0};
    static const std::regex pattern(R"((acf0?)(?:\((\d+)\)|_k(\d+)))");
    std::smatch m;
    if (std::regex_match(s, m, pattern)) {
        const std::string digits = m[2].matched ? m[2].str() : m[3].str();
        const auto lag = static_cast<std::size_t>(std::stoul(digits));
        return {m[1] == "acf0" ? StatisticKind::acf0 : StatisticKind::acf, lag};
    }
    throw ConfigError("unknown statistic '" + s + "'");
}

double compute_statistic(const StatisticSpec& stat, std::span<const double> series, double d) {
    switch (stat.kind) {
        case StatisticKind::mean: return sample_mean(series);
        case StatisticKind::renorm_mean: return renormalized_mean(series, d, 0.0);
        case StatisticKind::acf: return sample_acf(series, stat.lag);
        case StatisticKind::acf0: return sample_acf_zero_mean(series, stat.lag);
    }
    return 0.0;
}

void ExperimentConfig::validate() const {
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw ConfigError(name + ": " + e.what());
    }
    if (R < 1) throw ConfigError(name + ": R must be >= 1");
    if (B < 1) throw ConfigError(name + ": B must be >= 1");
    if (T < 8) throw ConfigError(name + ": T must be >= 8");
    if (statistics.empty()) throw ConfigError(name + ": no statistics");
    std::set<std::string> stat_names;
    for (const auto& s : statistics) {
        const bool lagged = s.kind == StatisticKind::acf || s.kind == StatisticKind::acf0;
        if (lagged && (s.lag < 1 || s.lag >= T))
            throw ConfigError(name + ": lag " + std::to_string(s.lag) + " must satisfy 1 <= k < T");
        if (!stat_names.insert(s.name()).second)
            throw ConfigError(name + ": duplicate statistic " + s.name());
    }
    std::set<std::string> labels;
    for (const auto& m : methods) {
        if (!labels.insert(m.label()).second)
            throw ConfigError(name + ": duplicate method " + m.label());
        if (m.fixed_order && *m.fixed_order >= T)
            throw ConfigError(name + ": fixed order must be < T");
        if (!(m.bandwidth_exponent > 0.0 && m.bandwidth_exponent < 1.0))
            throw ConfigError(name + ": bandwidth exponent must lie in (0, 1)");
        if (!(m.window.margin > 0.0 && m.window.margin < 0.5))
            throw ConfigError(name + ": window margin must lie in (0, 0.5)");
    }
    if (!(bandwidth_scale > 0.0)) throw ConfigError(name + ": bandwidth_scale must be positive");
    if (grid_points < 16) throw ConfigError(name + ": grid_points must be >= 16");
}

json to_json(const BootstrapMethod& m) {
    json j{{"kind", to_string(m.kind)}, {"estimator", to_string(m.estimator)}};
    if (m.fixed_order) j["order"] = *m.fixed_order;
    if (m.kind == BootstrapKind::fpfbs) j["fixed_d"] = m.fixed_d;
    if (m.kind == BootstrapKind::pfsbs) {
        j["memory_estimator"] = to_string(m.memory_estimator);
        j["bandwidth_exponent"] = m.bandwidth_exponent;
        j["memory_offset"] = m.memory_offset;
    }
    if (m.kind != BootstrapKind::sbs) j["window_margin"] = m.window.margin;
    return j;
}

BootstrapMethod method_from_json(const json& j) {
    BootstrapMethod m;
    try {
        if (j.is_string()) {
            m.kind = bootstrap_kind_from_string(j.get<std::string>());
            return m;
        }
        if (!j.is_object()) throw ConfigError("method must be a string or an object");
        m.kind = bootstrap_kind_from_string(j.at("kind").get<std::string>());
        if (j.contains("estimator")) m.estimator = sieve_method_from_string(j["estimator"].get<std::string>());
        if (j.contains("order") && !j["order"].is_null()) m.fixed_order = j["order"].get<std::size_t>();
        if (j.contains("fixed_d")) m.fixed_d = j["fixed_d"].get<double>();
        if (j.contains("memory_estimator"))
            m.memory_estimator = memory_method_from_string(j["memory_estimator"].get<std::string>());
        if (j.contains("bandwidth_exponent")) m.bandwidth_exponent = j["bandwidth_exponent"].get<double>();
        if (j.contains("memory_offset")) m.memory_offset = j["memory_offset"].get<double>();
        if (j.contains("window_margin")) m.window.margin = j["window_margin"].get<double>();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("method: ") + e.what());
    }
    return m;
}

namespace {

const std::set<std::string> kKnownKeys{"name",    "d",      "phi",        "sigma2",
                                       "T",       "R",      "B",          "statistics",
                                       "methods", "seed",   "bandwidth_scale", "grid_points",
                                       "keep_paths"};

}  // namespace

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("experiment must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (!kKnownKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    ExperimentConfig c;
    try {
        c.name = j.value("name", c.name);
        c.spec.d = j.value("d", c.spec.d);
        c.spec.phi = j.value("phi", c.spec.phi);
        c.spec.sigma2 = j.value("sigma2", c.spec.sigma2);
        c.T = j.value("T", c.T);
        c.R = j.value("R", c.R);
        c.B = j.value("B", c.B);
        c.seed = j.value("seed", c.seed);
        c.bandwidth_scale = j.value("bandwidth_scale", c.bandwidth_scale);
        c.grid_points = j.value("grid_points", c.grid_points);
        c.keep_paths = j.value("keep_paths", c.keep_paths);
        if (j.contains("statistics")) {
            c.statistics.clear();
            for (const auto& s : j["statistics"]) c.statistics.push_back(statistic_from_string(s.get<std::string>()));
        }
        if (j.contains("methods")) {
            c.methods.clear();
            for (const auto& m : j["methods"]) c.methods.push_back(method_from_json(m));
        }
    } catch (const json::exception& e) {
        throw ConfigError(c.name + ": " + e.what());
    }
    c.validate();
    return c;
}

json to_json(const ExperimentConfig& c) {
    json stats = json::array();
    for (const auto& s : c.statistics) stats.push_back(s.name());
    json methods = json::array();
    for (const auto& m : c.methods) methods.push_back(to_json(m));
    return json{{"name", c.name},
                {"d", c.spec.d},
                {"phi", c.spec.phi},
                {"sigma2", c.spec.sigma2},
                {"T", c.T},
                {"R", c.R},
                {"B", c.B},
                {"statistics", stats},
                {"methods", methods},
                {"seed", c.seed},
                {"bandwidth_scale", c.bandwidth_scale},
                {"grid_points", c.grid_points},
                {"keep_paths", c.keep_paths}};
}

std::vector<ExperimentConfig> configs_from_json(const json& j) {
    std::vector<ExperimentConfig> out;
    if (j.is_object() && j.contains("experiments")) {
        const json defaults = j.value("defaults", json::object());
        for (const auto& e : j["experiments"]) {
            json merged = defaults;
            merged.merge_patch(e);
            out.push_back(config_from_json(merged));
        }
    } else {
        out.push_back(config_from_json(j));
    }
    if (out.empty()) throw ConfigError("no experiments in configuration");
    return out;
}

std::vector<ExperimentConfig> load_configs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return configs_from_json(j);
}

std::string config_hash(const ExperimentConfig& c) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(to_json(c).dump())));
    return buf;
}

}  // namespace sieveboot::harness
