#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace curh {

constexpr uint32_t kNoId = std::numeric_limits<uint32_t>::max();

// Academic period. term 0 stands for "term not recorded / whole year";
// ordering is lexicographic on (year, term).
struct Period {
    int16_t year = 0;
    int8_t term = 0;

    friend auto operator<=>(const Period&, const Period&) = default;
};

constexpr Period kNoPeriod{std::numeric_limits<int16_t>::min(), 0};

enum class EventKind : uint8_t {
    Registration = 0,
    RegularExam,
    FreeExam,
    Promotion,
    Equivalence,
    Transfer,
    CurriculumChange,
    Graduation,
};

enum class ResultKind : uint8_t {
    Pass = 0,
    Fail,
    Absent,
    Withdrawal,
    NotApplicable,
};

enum class EndReason : uint8_t {
    Graduated = 0,
    SwitchedDegree,
    SwitchedCurriculum,
    Censored,
    Inactive,
};

std::string_view to_string(EventKind k);
std::string_view to_string(ResultKind r);
std::string_view to_string(EndReason r);
bool parse_event_kind(std::string_view s, EventKind& out);
bool parse_result(std::string_view s, ResultKind& out);
bool parse_end_reason(std::string_view s, EndReason& out);

inline bool is_course_event(EventKind k) {
    return k == EventKind::Registration || k == EventKind::RegularExam ||
           k == EventKind::FreeExam || k == EventKind::Promotion ||
           k == EventKind::Equivalence;
}

// Dense string interner. After Dataset::finalize() ids are ordered
// lexicographically, so sorting by id equals sorting by the string.
class StringPool {
public:
    uint32_t intern(std::string_view s);
    // Lookup without inserting; kNoId when absent.
    uint32_t find(std::string_view s) const;
    const std::string& str(uint32_t id) const { return strings_[id]; }
    uint32_t size() const { return static_cast<uint32_t>(strings_.size()); }

    // Reorders ids lexicographically; returns old-id -> new-id.
    std::vector<uint32_t> sort_ids();

private:
    std::vector<std::string> strings_;
    std::unordered_map<std::string, uint32_t> index_;
};

// One validated registry row. grade is NaN when absent; course is kNoId for
// status events without a course code; unit is kNoId when degree or
// curriculum was null in the source.
struct Event {
    uint32_t student = kNoId;
    uint32_t course = kNoId;
    uint32_t unit = kNoId;
    Period period;
    EventKind kind = EventKind::Registration;
    ResultKind result = ResultKind::NotApplicable;
    float grade = std::numeric_limits<float>::quiet_NaN();

    bool has_grade() const { return !std::isnan(grade); }
};

// Columnar home for a whole extract: interned identifiers plus the event
// rows in canonical order (student, period, kind, course, result).
struct Dataset {
    StringPool students;
    StringPool courses;
    StringPool degrees;
    StringPool curricula;

    // unit = (degree, curriculum)
    std::vector<std::pair<uint32_t, uint32_t>> unit_keys;
    std::vector<Event> events;              // assignable events, canonical order
    std::vector<Event> unassignable;        // null degree or curriculum
    Period horizon = kNoPeriod;             // max period over assignable events

    uint32_t intern_unit(uint32_t degree, uint32_t curriculum);
    uint32_t find_unit(uint32_t degree, uint32_t curriculum) const;
    uint32_t n_units() const { return static_cast<uint32_t>(unit_keys.size()); }

    const std::string& degree_of(uint32_t unit) const { return degrees.str(unit_keys[unit].first); }
    const std::string& curriculum_of(uint32_t unit) const { return curricula.str(unit_keys[unit].second); }
    std::string unit_label(uint32_t unit) const;

    // Sorts all pools lexicographically, remaps ids, re-sorts events into
    // canonical order and computes the horizon. Call once after loading.
    void finalize();

private:
    std::unordered_map<uint64_t, uint32_t> unit_index_;
};

// Maximal run of one student's events inside a single degree-curriculum.
// [ev_begin, ev_end) indexes Dataset::events.
struct Spell {
    uint32_t student = kNoId;
    uint32_t unit = kNoId;
    uint32_t ev_begin = 0;
    uint32_t ev_end = 0;
    Period start;
    Period end;
    EndReason reason = EndReason::Inactive;

    uint32_t n_events() const { return ev_end - ev_begin; }
};

} // namespace curh
