#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "curh/config.hpp"
#include "curh/ingest.hpp"
#include "curh/types.hpp"

namespace curh::tables {

struct SubjectAttempt {
    uint32_t student = kNoId;
    uint32_t course = kNoId;
    uint16_t attempt_index = 0; // 1-based, period order
    Period period;
    ResultKind outcome = ResultKind::Absent;
    EventKind source = EventKind::RegularExam; // provenance (equivalence flag etc.)
};

struct SubjectOutcome {
    uint32_t student = kNoId;
    uint32_t course = kNoId;
    Period first_attempt;
    Period pass_period = kNoPeriod;
    uint16_t n_attempts = 0;
    bool passed = false;
};

// Everything derived for one degree-curriculum unit.
struct UnitTables {
    uint32_t unit = kNoId;
    std::vector<SubjectAttempt> attempts;  // sorted by (student, course, attempt_index)
    std::vector<SubjectOutcome> outcomes;  // sorted by (student, course)
    std::unordered_map<uint32_t, int16_t> enrol_year; // student -> first spell start year
    uint64_t skipped_invalid = 0;          // attempts at invalid courses
    uint64_t discarded_post_pass = 0;      // rows after a pass

    int16_t enrol_year_of(uint32_t student) const { return enrol_year.at(student); }
};

// One row per attempt at a valid course; same-period registration+exam
// pairs collapse into the exam row, rows after a pass are trimmed.
// Attempt indices run across a student's spells within the unit.
std::vector<UnitTables> derive_attempts(const Dataset& data, std::span<const Spell> spells,
                                        const ingest::Catalog& catalog,
                                        const AnalysisConfig& cfg);

// Folds attempts into one row per (student, course). Input must be sorted
// by (student, course, attempt_index).
std::vector<SubjectOutcome> derive_outcomes(std::span<const SubjectAttempt> attempts);

} // namespace curh::tables
