#include "curh/graphs.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

namespace curh::graphs {

namespace {

// Per-course view used by the pair kernel: students sorted ascending.
struct CourseColumn {
    std::vector<uint32_t> student;
    std::vector<Period> first;
    std::vector<Period> pass; // kNoPeriod when never passed
    std::vector<bool> passed;
};

std::vector<CourseColumn> build_columns(const tables::UnitTables& ut,
                                        std::span<const uint32_t> courses) {
    std::vector<CourseColumn> cols(courses.size());
    std::vector<uint32_t> nodeOf;
    if (!courses.empty()) {
        nodeOf.assign(courses.back() + 1, kNoId);
        for (uint32_t i = 0; i < courses.size(); ++i) nodeOf[courses[i]] = i;
    }
    // outcomes are sorted by (student, course) so each column stays sorted.
    for (const auto& o : ut.outcomes) {
        if (o.course >= nodeOf.size() || nodeOf[o.course] == kNoId) continue;
        CourseColumn& c = cols[nodeOf[o.course]];
        c.student.push_back(o.student);
        c.first.push_back(o.first_attempt);
        c.pass.push_back(o.pass_period);
        c.passed.push_back(o.passed);
    }
    return cols;
}

void merge_pair(const CourseColumn& ca, const CourseColumn& cb, uint32_t a, uint32_t b,
                bool yearGranularity, PairCounts& out) {
    out = PairCounts{};
    out.a = a;
    out.b = b;
    std::size_t i = 0, j = 0;
    while (i < ca.student.size() && j < cb.student.size()) {
        if (ca.student[i] < cb.student[j]) {
            ++i;
        } else if (ca.student[i] > cb.student[j]) {
            ++j;
        } else {
            ++out.n_common;
            Period fa = ca.first[i], fb = cb.first[j];
            if (yearGranularity) {
                fa.term = 0;
                fb.term = 0;
            }
            if (fa != fb) {
                ++out.n_ordered;
                if (fa < fb) ++out.n_a_first;
            }
            if (ca.passed[i] && !cb.passed[j]) ++out.n_pass_a_not_b;
            if (cb.passed[j] && !ca.passed[i]) ++out.n_pass_b_not_a;
            ++i;
            ++j;
        }
    }
}

std::vector<PairCounts> pair_stats_impl(const tables::UnitTables& ut,
                                        std::span<const uint32_t> courses,
                                        int min_common, int min_ordered,
                                        bool yearGranularity, bool parallel) {
    const auto cols = build_columns(ut, courses);
    const uint32_t n = static_cast<uint32_t>(courses.size());
    std::vector<std::vector<PairCounts>> perA(n);

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (int64_t ai = 0; ai < static_cast<int64_t>(n); ++ai) {
        const uint32_t a = static_cast<uint32_t>(ai);
        PairCounts pc;
        for (uint32_t b = a + 1; b < n; ++b) {
            merge_pair(cols[a], cols[b], a, b, yearGranularity, pc);
            if (pc.n_common >= static_cast<uint32_t>(min_common) &&
                pc.n_ordered >= static_cast<uint32_t>(min_ordered)) {
                perA[a].push_back(pc);
            }
        }
    }

    std::vector<PairCounts> out;
    for (auto& v : perA) out.insert(out.end(), v.begin(), v.end());
    return out;
}

} // namespace

std::vector<std::vector<uint32_t>> UnitGraph::adjacency() const {
    std::vector<std::vector<uint32_t>> adj(courses.size());
    for (const auto& e : edges) adj[e.from].push_back(e.to);
    return adj;
}

std::vector<double> compute_levels(const tables::UnitTables& ut,
                                   std::span<const uint32_t> courses) {
    std::vector<uint32_t> nodeOf;
    if (!courses.empty()) {
        nodeOf.assign(courses.back() + 1, kNoId);
        for (uint32_t i = 0; i < courses.size(); ++i) nodeOf[courses[i]] = i;
    }
    std::vector<std::vector<double>> relYears(courses.size());
    for (const auto& o : ut.outcomes) {
        if (o.course >= nodeOf.size() || nodeOf[o.course] == kNoId) continue;
        const int rel = o.first_attempt.year - ut.enrol_year_of(o.student) + 1;
        relYears[nodeOf[o.course]].push_back(static_cast<double>(rel));
    }
    std::vector<double> levels(courses.size(), 0.0);
    for (std::size_t i = 0; i < relYears.size(); ++i) {
        auto& v = relYears[i];
        if (v.empty()) continue;
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size();
        levels[i] = (m % 2 == 1) ? v[m / 2] : (v[m / 2 - 1] + v[m / 2]) / 2.0;
    }
    return levels;
}

std::vector<PairCounts> pair_stats(const tables::UnitTables& ut,
                                   std::span<const uint32_t> courses, int min_common,
                                   int min_ordered, bool year_granularity) {
    return pair_stats_impl(ut, courses, min_common, min_ordered, year_granularity, true);
}

std::vector<PairCounts> pair_stats_serial(const tables::UnitTables& ut,
                                          std::span<const uint32_t> courses, int min_common,
                                          int min_ordered, bool year_granularity) {
    return pair_stats_impl(ut, courses, min_common, min_ordered, year_granularity, false);
}

std::vector<EdgeStats> infer_edges(std::span<const PairCounts> pairs, double theta_order,
                                   double theta_bypass) {
    std::vector<EdgeStats> edges;
    for (const auto& p : pairs) {
        if (p.p_order_ab() >= theta_order && p.p_bypass_ab() <= theta_bypass) {
            edges.push_back({p.a, p.b, p.p_order_ab(), p.p_bypass_ab(), p.n_common});
        }
        if (p.p_order_ba() >= theta_order && p.p_bypass_ba() <= theta_bypass) {
            edges.push_back({p.b, p.a, p.p_order_ba(), p.p_bypass_ba(), p.n_common});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const EdgeStats& x, const EdgeStats& y) {
        return std::make_pair(x.from, x.to) < std::make_pair(y.from, y.to);
    });
    return edges;
}

bool topological_order(std::size_t n, std::span<const EdgeStats> edges,
                       std::vector<uint32_t>& order) {
    std::vector<uint32_t> indeg(n, 0);
    std::vector<std::vector<uint32_t>> adj(n);
    for (const auto& e : edges) {
        adj[e.from].push_back(e.to);
        ++indeg[e.to];
    }
    std::priority_queue<uint32_t, std::vector<uint32_t>, std::greater<>> ready;
    for (uint32_t v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    order.clear();
    order.reserve(n);
    while (!ready.empty()) {
        const uint32_t v = ready.top();
        ready.pop();
        order.push_back(v);
        for (uint32_t w : adj[v])
            if (--indeg[w] == 0) ready.push(w);
    }
    return order.size() == n;
}

namespace {

struct TarjanState {
    const std::vector<std::vector<uint32_t>>& adj;
    std::vector<uint32_t> index, low, comp;
    std::vector<bool> onStack;
    std::vector<uint32_t> stack;
    uint32_t counter = 0, nComp = 0;

    explicit TarjanState(const std::vector<std::vector<uint32_t>>& a)
        : adj(a), index(a.size(), kNoId), low(a.size(), 0), comp(a.size(), kNoId),
          onStack(a.size(), false) {}

    void run(uint32_t root) {
        // Iterative Tarjan; frame = (node, next child position).
        std::vector<std::pair<uint32_t, std::size_t>> frames{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        onStack[root] = true;
        while (!frames.empty()) {
            auto& [v, child] = frames.back();
            if (child < adj[v].size()) {
                const uint32_t w = adj[v][child++];
                if (index[w] == kNoId) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    onStack[w] = true;
                    frames.emplace_back(w, 0);
                } else if (onStack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    while (true) {
                        const uint32_t w = stack.back();
                        stack.pop_back();
                        onStack[w] = false;
                        comp[w] = nComp;
                        if (w == v) break;
                    }
                    ++nComp;
                }
                const uint32_t done = v;
                frames.pop_back();
                if (!frames.empty()) {
                    const uint32_t parent = frames.back().first;
                    low[parent] = std::min(low[parent], low[done]);
                }
            }
        }
    }
};

} // namespace

std::vector<uint32_t> scc_components(std::size_t n, std::span<const EdgeStats> edges,
                                     uint32_t& n_components) {
    std::vector<std::vector<uint32_t>> adj(n);
    for (const auto& e : edges) adj[e.from].push_back(e.to);
    TarjanState st(adj);
    for (uint32_t v = 0; v < n; ++v)
        if (st.index[v] == kNoId) st.run(v);
    n_components = st.nComp;
    return st.comp;
}

CycleBreakResult break_cycles(std::size_t n_nodes, std::vector<EdgeStats> draft) {
    CycleBreakResult result;
    while (true) {
        uint32_t nComp = 0;
        const auto comp = scc_components(n_nodes, draft, nComp);
        std::vector<uint32_t> compSize(nComp, 0);
        for (uint32_t v = 0; v < n_nodes; ++v) ++compSize[comp[v]];

        // Tarjan emits components in reverse topological order, so the
        // topologically first non-trivial one has the highest id.
        uint32_t target = kNoId;
        for (uint32_t c = nComp; c-- > 0;) {
            if (compSize[c] > 1) {
                target = c;
                break;
            }
        }
        if (target == kNoId) break;

        std::size_t weakest = draft.size();
        for (std::size_t i = 0; i < draft.size(); ++i) {
            const auto& e = draft[i];
            if (comp[e.from] != target || comp[e.to] != target) continue;
            if (weakest == draft.size()) {
                weakest = i;
                continue;
            }
            const auto& w = draft[weakest];
            const auto keyE = std::make_tuple(e.support(), e.n_common, e.from, e.to);
            const auto keyW = std::make_tuple(w.support(), w.n_common, w.from, w.to);
            if (keyE < keyW) weakest = i;
        }
        result.removed.push_back({draft[weakest], "cycle_break"});
        draft.erase(draft.begin() + static_cast<std::ptrdiff_t>(weakest));
    }
    result.edges = std::move(draft);
    return result;
}

bool is_degenerate(std::size_t n_nodes, std::size_t n_edges, const AnalysisConfig& cfg) {
    return n_nodes < static_cast<std::size_t>(cfg.min_nodes) ||
           n_edges < static_cast<std::size_t>(cfg.min_edges);
}

UnitGraph build_unit_graph(const tables::UnitTables& ut, const AnalysisConfig& cfg) {
    UnitGraph g;
    g.unit = ut.unit;
    g.theta_order = cfg.theta_order;
    g.theta_bypass = cfg.theta_bypass;

    for (const auto& o : ut.outcomes) {
        if (g.courses.empty() || g.courses.back() != o.course) g.courses.push_back(o.course);
    }
    std::sort(g.courses.begin(), g.courses.end());
    g.courses.erase(std::unique(g.courses.begin(), g.courses.end()), g.courses.end());

    g.levels = compute_levels(ut, g.courses);
    const auto pairs = pair_stats(ut, g.courses, cfg.min_common, cfg.min_ordered,
                                  cfg.order_granularity == "year");
    auto draft = infer_edges(pairs, cfg.theta_order, cfg.theta_bypass);
    auto broken = break_cycles(g.courses.size(), std::move(draft));
    g.edges = std::move(broken.edges);
    g.removed_edges = std::move(broken.removed);
    g.degenerate = is_degenerate(g.courses.size(), g.edges.size(), cfg);
    return g;
}

std::vector<std::vector<bool>> reachability(std::size_t n, std::span<const EdgeStats> edges) {
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    std::vector<uint32_t> order;
    topological_order(n, edges, order);
    std::vector<std::vector<uint32_t>> adj(n);
    for (const auto& e : edges) adj[e.from].push_back(e.to);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const uint32_t u = *it;
        for (uint32_t v : adj[u]) {
            reach[u][v] = true;
            for (std::size_t w = 0; w < n; ++w)
                if (reach[v][w]) reach[u][w] = true;
        }
    }
    return reach;
}

std::vector<std::pair<uint32_t, uint32_t>> transitive_reduction(
    std::size_t n, std::span<const std::pair<uint32_t, uint32_t>> edges) {
    std::vector<EdgeStats> es;
    es.reserve(edges.size());
    for (const auto& [u, v] : edges) es.push_back({u, v, 0, 0, 0});
    const auto reach = reachability(n, es);
    std::vector<std::vector<uint32_t>> adj(n);
    for (const auto& [u, v] : edges) adj[u].push_back(v);

    std::vector<std::pair<uint32_t, uint32_t>> kept;
    for (const auto& [u, v] : edges) {
        bool redundant = false;
        for (uint32_t w : adj[u]) {
            if (w != v && reach[w][v]) {
                redundant = true;
                break;
            }
        }
        if (!redundant) kept.emplace_back(u, v);
    }
    return kept;
}

} // namespace curh::graphs
