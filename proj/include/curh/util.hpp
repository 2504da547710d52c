#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace curh::util {

std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::filesystem::path& path);

// Shortest round-trip decimal form ("2", "0.25", "0.8333333333333334").
// Used for every numeric cell we emit so that output bytes depend only on
// the computed values.
std::string fmt_double(double v);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

// UTC timestamp, ISO 8601. Honors SOURCE_DATE_EPOCH so batch runs can be
// made byte-reproducible.
std::string utc_timestamp();

// Filesystem-safe token for unit directories: keeps [A-Za-z0-9._-],
// replaces everything else with '_'.
std::string sanitize_token(std::string_view s);

int thread_count();

// SplitMix64; used to derive independent per-student RNG seeds.
uint64_t mix64(uint64_t x);

} // namespace curh::util
