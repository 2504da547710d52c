#include "curh/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <regex>
#include <tuple>

#include "curh/csv.hpp"
#include "curh/errors.hpp"
#include "curh/util.hpp"

namespace curh::ingest {

namespace {

constexpr const char* kHeader =
    "student_id,degree_id,curriculum_id,course_code,event_kind,result,grade,period_year,period_term";

bool parse_int(std::string_view s, long& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

bool parse_float(std::string_view s, float& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

struct RowSink {
    const AnalysisConfig& cfg;
    RejectReport& report;
    std::vector<Event> all;      // file order, unit == kNoId marks unassignable
    Dataset data;

    void reject(uint64_t line, const char* reason) {
        ++report.malformed;
        ++report.reasons[reason];
        if (report.first_bad_lines.size() < 10) report.first_bad_lines.push_back(line);
    }

    void consume(const std::vector<std::string>& f, uint64_t line) {
        ++report.rows_total;
        if (f.size() != 9) return reject(line, "wrong_field_count");
        const std::string& student = f[0];
        const std::string& degree = f[1];
        const std::string& curriculum = f[2];
        const std::string& course = f[3];

        if (student.empty()) return reject(line, "missing_student_id");

        Event e;
        if (!parse_event_kind(f[4], e.kind)) return reject(line, "bad_event_kind");
        if (!parse_result(f[5], e.result)) return reject(line, "bad_result");
        if (is_course_event(e.kind) && course.empty()) return reject(line, "missing_course_code");
        if (e.kind == EventKind::Graduation && e.result != ResultKind::NotApplicable)
            return reject(line, "graduation_result_not_applicable");

        if (!f[6].empty()) {
            if (!parse_float(f[6], e.grade)) return reject(line, "bad_grade");
        }

        long year = 0;
        if (!parse_int(f[7], year)) return reject(line, "bad_period_year");
        if (year < cfg.min_year || year > cfg.max_year) return reject(line, "year_out_of_range");
        e.period.year = static_cast<int16_t>(year);

        if (!f[8].empty()) {
            long term = 0;
            if (!parse_int(f[8], term) || term < 0 || term > 9) return reject(line, "bad_period_term");
            e.period.term = static_cast<int8_t>(term);
        }

        e.student = data.students.intern(student);
        if (!course.empty()) e.course = data.courses.intern(course);
        if (!degree.empty() && !curriculum.empty()) {
            e.unit = data.intern_unit(data.degrees.intern(degree), data.curricula.intern(curriculum));
        }
        all.push_back(e);
    }
};

Dataset load_impl(std::string_view text, const AnalysisConfig& cfg, RejectReport& report,
                  const std::string& origin) {
    csv::Reader reader(text);
    std::string_view line;
    uint64_t line_no = 0;
    if (!reader.next(line, line_no))
        throw SchemaError(origin + ": empty file, expected header '" + kHeader + "'");
    if (line != kHeader)
        throw SchemaError(origin + ": header mismatch, expected '" + kHeader + "' got '" +
                          std::string(line) + "'");

    RowSink sink{cfg, report, {}, {}};
    std::vector<std::string> fields;
    while (reader.next(line, line_no)) {
        if (line.empty()) continue;
        if (!csv::split_record(line, fields)) {
            sink.reject(line_no, "unbalanced_quotes");
            continue;
        }
        sink.consume(fields, line_no);
    }

    if (report.rows_total > 0) {
        const double frac = static_cast<double>(report.malformed) /
                            static_cast<double>(report.rows_total);
        if (frac > cfg.malformed_tolerance) {
            std::string lines;
            for (uint64_t l : sink.report.first_bad_lines) {
                if (!lines.empty()) lines += ", ";
                lines += std::to_string(l);
            }
            throw IngestError(origin + ": malformed-row fraction " + util::fmt_double(frac) +
                              " exceeds tolerance " + util::fmt_double(cfg.malformed_tolerance) +
                              "; first offending lines: " + lines);
        }
    }

    // Dedup on (student, course, kind, year, term, result), first file
    // occurrence wins. The key deliberately ignores degree/curriculum so a
    // row replicated across plan exports counts once.
    auto& all = sink.all;
    std::vector<uint32_t> order(all.size());
    std::iota(order.begin(), order.end(), 0u);
    auto key = [&](uint32_t i) {
        const Event& e = all[i];
        return std::make_tuple(e.student, e.course, e.kind, e.period.year, e.period.term, e.result);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](uint32_t a, uint32_t b) { return key(a) < key(b); });
    std::vector<bool> drop(all.size(), false);
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (key(order[i]) == key(order[i - 1])) {
            drop[order[i]] = true;
            ++report.duplicates;
        }
    }

    Dataset data = std::move(sink.data);
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (drop[i]) continue;
        if (all[i].unit == kNoId) {
            data.unassignable.push_back(all[i]);
            ++report.unassignable;
        } else {
            data.events.push_back(all[i]);
        }
    }
    report.rows_loaded = data.events.size() + data.unassignable.size();
    data.finalize();
    return data;
}

} // namespace

Dataset load_events(const std::filesystem::path& path, const AnalysisConfig& cfg,
                    RejectReport& report) {
    std::string text;
    try {
        text = util::read_text_file(path);
    } catch (const std::exception& e) {
        throw IngestError(e.what());
    }
    return load_impl(text, cfg, report, path.string());
}

Dataset load_events_text(std::string_view csv_text, const AnalysisConfig& cfg,
                         RejectReport& report, const std::string& origin) {
    return load_impl(csv_text, cfg, report, origin);
}

std::vector<Spell> segment_spells(const Dataset& data, const AnalysisConfig& cfg) {
    std::vector<Spell> spells;
    const auto& ev = data.events;

    auto degree_changed = [&](uint32_t unitA, uint32_t unitB) {
        return data.unit_keys[unitA].first != data.unit_keys[unitB].first;
    };

    std::size_t i = 0;
    while (i < ev.size()) {
        const uint32_t student = ev[i].student;
        std::size_t end = i;
        while (end < ev.size() && ev[end].student == student) ++end;

        bool open = false;
        Spell cur;
        bool pendingClose = false;
        EndReason pendingReason = EndReason::Inactive;

        auto close = [&](EndReason reason) {
            cur.reason = reason;
            spells.push_back(cur);
            open = false;
            pendingClose = false;
        };

        for (std::size_t k = i; k < end; ++k) {
            const Event& e = ev[k];
            if (open && pendingClose) close(pendingReason);
            if (open && e.unit != cur.unit) {
                close(degree_changed(cur.unit, e.unit) ? EndReason::SwitchedDegree
                                                       : EndReason::SwitchedCurriculum);
            }
            if (!open) {
                cur = Spell{};
                cur.student = student;
                cur.unit = e.unit;
                cur.ev_begin = static_cast<uint32_t>(k);
                cur.start = e.period;
                open = true;
            }
            cur.ev_end = static_cast<uint32_t>(k + 1);
            cur.end = e.period;

            if (e.kind == EventKind::Graduation) {
                close(EndReason::Graduated);
            } else if (e.kind == EventKind::Transfer) {
                pendingClose = true;
                pendingReason = EndReason::SwitchedDegree;
            } else if (e.kind == EventKind::CurriculumChange) {
                pendingClose = true;
                pendingReason = EndReason::SwitchedCurriculum;
            }
        }
        if (open) {
            if (pendingClose) {
                close(pendingReason);
            } else if (data.horizon.year - cur.end.year < cfg.window_years) {
                close(EndReason::Censored);
            } else {
                close(EndReason::Inactive);
            }
        }
        i = end;
    }
    return spells;
}

void collapse_attempts(const Dataset& data, const Spell& spell, bool include_equivalences,
                       std::vector<CollapsedAttempt>& out) {
    // Spell slices are small; work on a local copy sorted by course.
    std::vector<const Event*> courseEvents;
    for (uint32_t k = spell.ev_begin; k < spell.ev_end; ++k) {
        const Event& e = data.events[k];
        if (is_course_event(e.kind) && e.course != kNoId) courseEvents.push_back(&e);
    }
    std::sort(courseEvents.begin(), courseEvents.end(), [](const Event* a, const Event* b) {
        return std::make_tuple(a->course, a->period, a->kind, a->result) <
               std::make_tuple(b->course, b->period, b->kind, b->result);
    });

    std::vector<CollapsedAttempt> attempts;
    std::vector<Period> registrations;
    std::size_t i = 0;
    while (i < courseEvents.size()) {
        const uint32_t course = courseEvents[i]->course;
        attempts.clear();
        registrations.clear();
        std::size_t j = i;
        for (; j < courseEvents.size() && courseEvents[j]->course == course; ++j) {
            const Event& e = *courseEvents[j];
            switch (e.kind) {
                case EventKind::RegularExam:
                case EventKind::FreeExam:
                case EventKind::Promotion:
                    if (e.result != ResultKind::NotApplicable)
                        attempts.push_back({course, e.period, e.kind, e.result});
                    break;
                case EventKind::Equivalence:
                    if (include_equivalences && e.result == ResultKind::Pass)
                        attempts.push_back({course, e.period, e.kind, ResultKind::Pass});
                    break;
                case EventKind::Registration:
                    registrations.push_back(e.period);
                    break;
                default:
                    break;
            }
        }
        // A registration only counts on its own: with an attempt event in
        // the same period it is preparatory, not a separate attempt.
        Period lastEmitted = kNoPeriod;
        for (const Period& p : registrations) {
            if (p == lastEmitted) continue; // repeated registrations, one absence
            bool covered = false;
            for (const auto& a : attempts) {
                if (a.period == p && a.source != EventKind::Registration) {
                    covered = true;
                    break;
                }
            }
            if (!covered) {
                attempts.push_back({course, p, EventKind::Registration, ResultKind::Absent});
                lastEmitted = p;
            }
        }
        std::sort(attempts.begin(), attempts.end(), [](const CollapsedAttempt& a, const CollapsedAttempt& b) {
            return std::make_tuple(a.period, a.source, a.outcome) <
                   std::make_tuple(b.period, b.source, b.outcome);
        });
        out.insert(out.end(), attempts.begin(), attempts.end());
        i = j;
    }
}

bool Catalog::is_valid(uint32_t unit, uint32_t course) const {
    const CatalogEntry* e = find(unit, course);
    return e != nullptr && e->valid;
}

const CatalogEntry* Catalog::find(uint32_t unit, uint32_t course) const {
    const uint64_t key = (static_cast<uint64_t>(unit) << 32) | course;
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &entries[it->second];
}

void Catalog::rebuild_index() {
    index_.clear();
    for (uint32_t i = 0; i < entries.size(); ++i) {
        const uint64_t key = (static_cast<uint64_t>(entries[i].unit) << 32) | entries[i].course;
        index_.emplace(key, i);
    }
}

Catalog build_course_catalog(const Dataset& data, std::span<const Spell> spells,
                             const AnalysisConfig& cfg) {
    std::vector<std::regex> placeholders;
    placeholders.reserve(cfg.placeholder_patterns.size());
    for (const auto& pat : cfg.placeholder_patterns) {
        try {
            placeholders.emplace_back(pat);
        } catch (const std::regex_error& e) {
            throw ConfigError("bad placeholder pattern '" + pat + "': " + e.what());
        }
    }

    struct Acc {
        uint32_t n_students = 0;
        uint32_t n_attempts = 0;
        uint32_t last_student = kNoId;
        int16_t first_seen = std::numeric_limits<int16_t>::max();
        int16_t last_seen = std::numeric_limits<int16_t>::min();
    };
    std::unordered_map<uint64_t, Acc> acc;

    std::vector<CollapsedAttempt> attempts;
    for (const Spell& sp : spells) {
        // Seen-span bookkeeping uses raw course events; attempt counts use
        // the collapsed attempt definition.
        for (uint32_t k = sp.ev_begin; k < sp.ev_end; ++k) {
            const Event& e = data.events[k];
            if (!is_course_event(e.kind) || e.course == kNoId) continue;
            const uint64_t key = (static_cast<uint64_t>(sp.unit) << 32) | e.course;
            Acc& a = acc[key];
            a.first_seen = std::min(a.first_seen, e.period.year);
            a.last_seen = std::max(a.last_seen, e.period.year);
        }
        attempts.clear();
        collapse_attempts(data, sp, !cfg.exclude_equivalences, attempts);
        for (const auto& at : attempts) {
            const uint64_t key = (static_cast<uint64_t>(sp.unit) << 32) | at.course;
            Acc& a = acc[key];
            ++a.n_attempts;
            if (a.last_student != sp.student) {
                a.last_student = sp.student;
                ++a.n_students;
            }
        }
    }

    Catalog catalog;
    catalog.entries.reserve(acc.size());
    for (const auto& [key, a] : acc) {
        CatalogEntry e;
        e.unit = static_cast<uint32_t>(key >> 32);
        e.course = static_cast<uint32_t>(key & 0xffffffffu);
        e.n_students = a.n_students;
        e.n_attempts = a.n_attempts;
        e.first_seen = a.first_seen;
        e.last_seen = a.last_seen;
        const std::string& code = data.courses.str(e.course);
        bool placeholder = false;
        for (const auto& re : placeholders) {
            if (std::regex_search(code, re)) {
                placeholder = true;
                break;
            }
        }
        e.valid = !placeholder &&
                  e.n_students >= static_cast<uint32_t>(cfg.min_students) &&
                  e.n_attempts >= static_cast<uint32_t>(cfg.min_attempts);
        catalog.entries.push_back(e);
    }
    std::sort(catalog.entries.begin(), catalog.entries.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) {
                  return std::make_pair(a.unit, a.course) < std::make_pair(b.unit, b.course);
              });
    catalog.rebuild_index();
    return catalog;
}

} // namespace curh::ingest
