#include "curh/types.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace curh {

namespace {

constexpr std::string_view kEventKindNames[] = {
    "registration", "regular_exam", "free_exam", "promotion",
    "equivalence",  "transfer",     "curriculum_change", "graduation",
};

constexpr std::string_view kResultNames[] = {
    "pass", "fail", "absent", "withdrawal", "not_applicable",
};

constexpr std::string_view kEndReasonNames[] = {
    "graduated", "switched_degree", "switched_curriculum", "censored", "inactive",
};

template <typename E, std::size_t N>
bool parse_enum(const std::string_view (&names)[N], std::string_view s, E& out) {
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == s) {
            out = static_cast<E>(i);
            return true;
        }
    }
    return false;
}

} // namespace

std::string_view to_string(EventKind k) { return kEventKindNames[static_cast<uint8_t>(k)]; }
std::string_view to_string(ResultKind r) { return kResultNames[static_cast<uint8_t>(r)]; }
std::string_view to_string(EndReason r) { return kEndReasonNames[static_cast<uint8_t>(r)]; }

bool parse_event_kind(std::string_view s, EventKind& out) { return parse_enum(kEventKindNames, s, out); }
bool parse_result(std::string_view s, ResultKind& out) { return parse_enum(kResultNames, s, out); }
bool parse_end_reason(std::string_view s, EndReason& out) { return parse_enum(kEndReasonNames, s, out); }

uint32_t StringPool::intern(std::string_view s) {
    auto it = index_.find(std::string(s));
    if (it != index_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(strings_.size());
    strings_.emplace_back(s);
    index_.emplace(strings_.back(), id);
    return id;
}

uint32_t StringPool::find(std::string_view s) const {
    auto it = index_.find(std::string(s));
    return it == index_.end() ? kNoId : it->second;
}

std::vector<uint32_t> StringPool::sort_ids() {
    std::vector<uint32_t> order(strings_.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return strings_[a] < strings_[b];
    });
    std::vector<uint32_t> remap(strings_.size());
    std::vector<std::string> sorted(strings_.size());
    for (uint32_t newId = 0; newId < order.size(); ++newId) {
        remap[order[newId]] = newId;
        sorted[newId] = std::move(strings_[order[newId]]);
    }
    strings_ = std::move(sorted);
    index_.clear();
    for (uint32_t i = 0; i < strings_.size(); ++i) index_.emplace(strings_[i], i);
    return remap;
}

uint32_t Dataset::intern_unit(uint32_t degree, uint32_t curriculum) {
    const uint64_t key = (static_cast<uint64_t>(degree) << 32) | curriculum;
    auto it = unit_index_.find(key);
    if (it != unit_index_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(unit_keys.size());
    unit_keys.emplace_back(degree, curriculum);
    unit_index_.emplace(key, id);
    return id;
}

uint32_t Dataset::find_unit(uint32_t degree, uint32_t curriculum) const {
    const uint64_t key = (static_cast<uint64_t>(degree) << 32) | curriculum;
    auto it = unit_index_.find(key);
    return it == unit_index_.end() ? kNoId : it->second;
}

std::string Dataset::unit_label(uint32_t unit) const {
    return degree_of(unit) + "/" + curriculum_of(unit);
}

void Dataset::finalize() {
    const auto studentMap = students.sort_ids();
    const auto courseMap = courses.sort_ids();
    const auto degreeMap = degrees.sort_ids();
    const auto curriculumMap = curricula.sort_ids();

    for (auto& [deg, cur] : unit_keys) {
        deg = degreeMap[deg];
        cur = curriculumMap[cur];
    }
    // Renumber units so unit id order equals (degree, curriculum) order.
    std::vector<uint32_t> unitOrder(unit_keys.size());
    std::iota(unitOrder.begin(), unitOrder.end(), 0u);
    std::sort(unitOrder.begin(), unitOrder.end(), [&](uint32_t a, uint32_t b) {
        return unit_keys[a] < unit_keys[b];
    });
    std::vector<uint32_t> unitMap(unit_keys.size());
    std::vector<std::pair<uint32_t, uint32_t>> sortedUnits(unit_keys.size());
    for (uint32_t newId = 0; newId < unitOrder.size(); ++newId) {
        unitMap[unitOrder[newId]] = newId;
        sortedUnits[newId] = unit_keys[unitOrder[newId]];
    }
    unit_keys = std::move(sortedUnits);
    unit_index_.clear();
    for (uint32_t i = 0; i < unit_keys.size(); ++i) {
        const uint64_t key = (static_cast<uint64_t>(unit_keys[i].first) << 32) | unit_keys[i].second;
        unit_index_.emplace(key, i);
    }

    auto remapEvent = [&](Event& e) {
        e.student = studentMap[e.student];
        if (e.course != kNoId) e.course = courseMap[e.course];
        if (e.unit != kNoId) e.unit = unitMap[e.unit];
    };
    for (auto& e : events) remapEvent(e);
    for (auto& e : unassignable) remapEvent(e);

    auto key = [](const Event& e) {
        return std::make_tuple(e.student, e.period, e.kind, e.course, e.result);
    };
    std::sort(events.begin(), events.end(),
              [&](const Event& a, const Event& b) { return key(a) < key(b); });
    std::sort(unassignable.begin(), unassignable.end(),
              [&](const Event& a, const Event& b) { return key(a) < key(b); });

    horizon = kNoPeriod;
    for (const auto& e : events) horizon = std::max(horizon, e.period);
}

} // namespace curh
