#include "curh/tables.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace curh::tables {

std::vector<UnitTables> derive_attempts(const Dataset& data, std::span<const Spell> spells,
                                        const ingest::Catalog& catalog,
                                        const AnalysisConfig& cfg) {
    std::vector<UnitTables> units;
    std::unordered_map<uint32_t, std::size_t> unitIdx;
    auto bucket = [&](uint32_t unit) -> UnitTables& {
        auto it = unitIdx.find(unit);
        if (it != unitIdx.end()) return units[it->second];
        unitIdx.emplace(unit, units.size());
        units.emplace_back();
        units.back().unit = unit;
        return units.back();
    };

    // Spells arrive grouped by student and chronologically ordered.
    std::size_t i = 0;
    std::vector<ingest::CollapsedAttempt> scratch;
    while (i < spells.size()) {
        const uint32_t student = spells[i].student;
        std::size_t end = i;
        while (end < spells.size() && spells[end].student == student) ++end;

        // Attempts of one student may span several spells in the same unit
        // (left and came back); merge before indexing.
        std::map<uint32_t, std::vector<ingest::CollapsedAttempt>> perUnit;
        for (std::size_t s = i; s < end; ++s) {
            const Spell& sp = spells[s];
            UnitTables& ut = bucket(sp.unit);
            ut.enrol_year.try_emplace(student, sp.start.year);
            scratch.clear();
            ingest::collapse_attempts(data, sp, !cfg.exclude_equivalences, scratch);
            auto& dst = perUnit[sp.unit];
            dst.insert(dst.end(), scratch.begin(), scratch.end());
        }

        for (auto& [unit, rows] : perUnit) {
            UnitTables& ut = bucket(unit);
            std::sort(rows.begin(), rows.end(),
                      [](const ingest::CollapsedAttempt& a, const ingest::CollapsedAttempt& b) {
                          return std::make_tuple(a.course, a.period, a.source, a.outcome) <
                                 std::make_tuple(b.course, b.period, b.source, b.outcome);
                      });
            std::size_t k = 0;
            while (k < rows.size()) {
                const uint32_t course = rows[k].course;
                std::size_t runEnd = k;
                while (runEnd < rows.size() && rows[runEnd].course == course) ++runEnd;
                if (!catalog.is_valid(unit, course)) {
                    ut.skipped_invalid += runEnd - k;
                } else {
                    uint16_t index = 0;
                    for (std::size_t r = k; r < runEnd; ++r) {
                        ++index;
                        ut.attempts.push_back({student, course, index, rows[r].period,
                                               rows[r].outcome, rows[r].source});
                        if (rows[r].outcome == ResultKind::Pass) {
                            ut.discarded_post_pass += runEnd - r - 1;
                            break;
                        }
                    }
                }
                k = runEnd;
            }
        }
        i = end;
    }

    std::sort(units.begin(), units.end(),
              [](const UnitTables& a, const UnitTables& b) { return a.unit < b.unit; });
    for (auto& ut : units) ut.outcomes = derive_outcomes(ut.attempts);
    return units;
}

std::vector<SubjectOutcome> derive_outcomes(std::span<const SubjectAttempt> attempts) {
    std::vector<SubjectOutcome> out;
    std::size_t i = 0;
    while (i < attempts.size()) {
        const uint32_t student = attempts[i].student;
        const uint32_t course = attempts[i].course;
        SubjectOutcome o;
        o.student = student;
        o.course = course;
        o.first_attempt = attempts[i].period;
        while (i < attempts.size() && attempts[i].student == student &&
               attempts[i].course == course) {
            ++o.n_attempts;
            if (attempts[i].outcome == ResultKind::Pass) {
                o.passed = true;
                o.pass_period = attempts[i].period;
            }
            ++i;
        }
        out.push_back(o);
    }
    return out;
}

} // namespace curh::tables
