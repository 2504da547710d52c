#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "curh/config.hpp"
#include "curh/types.hpp"

namespace curh::ingest {

struct RejectReport {
    uint64_t rows_total = 0;      // data rows seen (header excluded)
    uint64_t rows_loaded = 0;     // events kept (assignable + unassignable)
    uint64_t malformed = 0;
    uint64_t duplicates = 0;
    uint64_t unassignable = 0;    // null degree or curriculum
    std::map<std::string, uint64_t> reasons;
    std::vector<uint64_t> first_bad_lines; // up to 10, 1-based file lines
};

// Parses, validates and deduplicates an academic-event CSV extract.
// Header must match the documented schema exactly. Malformed rows are
// counted per reason; when their fraction exceeds cfg.malformed_tolerance
// an IngestError naming the first offending lines is thrown.
Dataset load_events(const std::filesystem::path& path, const AnalysisConfig& cfg,
                    RejectReport& report);
Dataset load_events_text(std::string_view csv_text, const AnalysisConfig& cfg,
                         RejectReport& report, const std::string& origin = "<memory>");

// Cuts each student's event stream into spells. A transfer or
// curriculum_change marker closes the running spell at the next event; a
// unit change without a marker closes it implicitly; graduation closes it
// immediately. The final spell of a student who simply stops is censored
// when the data horizon is less than cfg.window_years past their last
// activity, inactive otherwise.
std::vector<Spell> segment_spells(const Dataset& data, const AnalysisConfig& cfg);

struct CatalogEntry {
    uint32_t unit = kNoId;
    uint32_t course = kNoId;
    uint32_t n_students = 0;
    uint32_t n_attempts = 0; // attempt-generating events, before post-pass trimming
    int16_t first_seen = 0;  // year
    int16_t last_seen = 0;
    bool valid = false;
};

class Catalog {
public:
    std::vector<CatalogEntry> entries; // sorted by (unit, course)

    bool is_valid(uint32_t unit, uint32_t course) const;
    const CatalogEntry* find(uint32_t unit, uint32_t course) const;
    void rebuild_index();

private:
    std::unordered_map<uint64_t, uint32_t> index_;
};

Catalog build_course_catalog(const Dataset& data, std::span<const Spell> spells,
                             const AnalysisConfig& cfg);

// One attempt after collapsing same-period registration+exam pairs. This is
// the single attempt definition shared by the catalog counts and the
// trajectory tables: exam kinds with a recorded result are attempts,
// equivalence passes are attempts, and a registration with no attempt event
// in the same period becomes an absent attempt.
struct CollapsedAttempt {
    uint32_t course = kNoId;
    Period period;
    EventKind source = EventKind::RegularExam;
    ResultKind outcome = ResultKind::Absent;
};

// Appends the attempts of one spell, sorted by (course, period, source, outcome).
void collapse_attempts(const Dataset& data, const Spell& spell,
                       bool include_equivalences, std::vector<CollapsedAttempt>& out);

} // namespace curh::ingest
