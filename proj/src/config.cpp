#include "curh/config.hpp"

#include <set>

#include <json.hpp>

#include "curh/errors.hpp"
#include "curh/util.hpp"

namespace curh {

using nlohmann::json;

namespace {

template <typename T>
void read_key(const json& j, const char* key, T& out, const std::string& origin) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": bad value for key '" + key + "': " + e.what());
    }
}

void read_opt_int(const json& j, const char* key, std::optional<int>& out, const std::string& origin) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return;
    if (!it->is_number_integer())
        throw ConfigError(origin + ": key '" + key + "' must be an integer or null");
    out = it->get<int>();
}

} // namespace

std::string AnalysisConfig::canonical_json() const {
    json j;
    j["min_year"] = min_year;
    j["max_year"] = max_year;
    j["min_students"] = min_students;
    j["min_attempts"] = min_attempts;
    j["placeholder_patterns"] = placeholder_patterns;
    j["malformed_tolerance"] = malformed_tolerance;
    j["exclude_equivalences"] = exclude_equivalences;
    j["theta_order"] = theta_order;
    j["theta_bypass"] = theta_bypass;
    j["min_common"] = min_common;
    j["min_ordered"] = min_ordered;
    j["min_nodes"] = min_nodes;
    j["min_edges"] = min_edges;
    j["order_granularity"] = order_granularity;
    j["blocking_weights"] = blocking_weights;
    j["dropout_denominator"] = dropout_denominator;
    j["window_years"] = window_years;
    j["cohort_start"] = cohort_start ? json(*cohort_start) : json(nullptr);
    j["cohort_end"] = cohort_end ? json(*cohort_end) : json(nullptr);
    j["degree_names"] = degree_names;
    return j.dump();
}

std::string AnalysisConfig::digest() const { return util::sha256_hex(canonical_json()); }

AnalysisConfig parse_config(const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError(origin + ": config root must be a JSON object");

    static const std::set<std::string> known = {
        "min_year", "max_year", "min_students", "min_attempts", "placeholder_patterns",
        "malformed_tolerance", "exclude_equivalences", "theta_order", "theta_bypass",
        "min_common", "min_ordered", "min_nodes", "min_edges", "order_granularity",
        "blocking_weights", "dropout_denominator", "window_years", "cohort_start",
        "cohort_end", "degree_names",
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key()))
            throw ConfigError(origin + ": unknown config key '" + it.key() + "'");
    }

    AnalysisConfig cfg;
    read_key(j, "min_year", cfg.min_year, origin);
    read_key(j, "max_year", cfg.max_year, origin);
    read_key(j, "min_students", cfg.min_students, origin);
    read_key(j, "min_attempts", cfg.min_attempts, origin);
    read_key(j, "placeholder_patterns", cfg.placeholder_patterns, origin);
    read_key(j, "malformed_tolerance", cfg.malformed_tolerance, origin);
    read_key(j, "exclude_equivalences", cfg.exclude_equivalences, origin);
    read_key(j, "theta_order", cfg.theta_order, origin);
    read_key(j, "theta_bypass", cfg.theta_bypass, origin);
    read_key(j, "min_common", cfg.min_common, origin);
    read_key(j, "min_ordered", cfg.min_ordered, origin);
    read_key(j, "min_nodes", cfg.min_nodes, origin);
    read_key(j, "min_edges", cfg.min_edges, origin);
    read_key(j, "order_granularity", cfg.order_granularity, origin);
    read_key(j, "blocking_weights", cfg.blocking_weights, origin);
    read_key(j, "dropout_denominator", cfg.dropout_denominator, origin);
    read_key(j, "window_years", cfg.window_years, origin);
    read_opt_int(j, "cohort_start", cfg.cohort_start, origin);
    read_opt_int(j, "cohort_end", cfg.cohort_end, origin);
    read_key(j, "degree_names", cfg.degree_names, origin);

    if (cfg.min_year > cfg.max_year)
        throw ConfigError(origin + ": min_year > max_year");
    if (!(cfg.theta_order > 0.5 && cfg.theta_order <= 1.0))
        throw ConfigError(origin + ": theta_order must lie in (0.5, 1]");
    if (!(cfg.theta_bypass >= 0.0 && cfg.theta_bypass < 1.0))
        throw ConfigError(origin + ": theta_bypass must lie in [0, 1)");
    if (cfg.malformed_tolerance < 0.0 || cfg.malformed_tolerance > 1.0)
        throw ConfigError(origin + ": malformed_tolerance must lie in [0, 1]");
    if (cfg.order_granularity != "period" && cfg.order_granularity != "year")
        throw ConfigError(origin + ": order_granularity must be 'period' or 'year'");
    if (cfg.dropout_denominator != "attempters" && cfg.dropout_denominator != "spell_population")
        throw ConfigError(origin + ": dropout_denominator must be 'attempters' or 'spell_population'");
    if (cfg.window_years < 1)
        throw ConfigError(origin + ": window_years must be >= 1");
    if (cfg.min_common < 1 || cfg.min_ordered < 1)
        throw ConfigError(origin + ": min_common and min_ordered must be >= 1");
    return cfg;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
    std::string text;
    try {
        text = util::read_text_file(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return parse_config(text, path.string());
}

} // namespace curh
