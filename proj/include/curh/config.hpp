#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curh {

// Flat analysis configuration. One JSON object, every key optional;
// unknown keys are rejected so typos cannot silently change a run.
struct AnalysisConfig {
    // ingest
    int min_year = 1950;
    int max_year = 2100;
    int min_students = 5;
    int min_attempts = 5;
    std::vector<std::string> placeholder_patterns;
    double malformed_tolerance = 0.01;
    bool exclude_equivalences = false;

    // graph inference
    double theta_order = 0.7;
    double theta_bypass = 0.2;
    int min_common = 10;
    int min_ordered = 10;
    int min_nodes = 8;
    int min_edges = 5;
    std::string order_granularity = "period"; // "period" | "year"

    // hardship
    std::array<double, 5> blocking_weights = {1, 1, 1, 1, 1};
    std::string dropout_denominator = "attempters"; // "attempters" | "spell_population"

    // outcomes
    int window_years = 3;
    std::optional<int> cohort_start;
    std::optional<int> cohort_end;

    // presentation
    std::map<std::string, std::string> degree_names;

    // Canonical JSON snapshot of every key (sorted keys, defaults filled in).
    std::string canonical_json() const;
    std::string digest() const; // sha256 of canonical_json
};

AnalysisConfig load_config(const std::filesystem::path& path);
AnalysisConfig parse_config(const std::string& json_text, const std::string& origin);

} // namespace curh
