#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curh/config.hpp"
#include "curh/tables.hpp"
#include "curh/types.hpp"

namespace curh::graphs {

// Pairwise ordering/bypass evidence for one unordered course pair (a < b,
// node indices). Counts are over students who attempted both.
struct PairCounts {
    uint32_t a = 0;
    uint32_t b = 0;
    uint32_t n_common = 0;       // attempted both
    uint32_t n_ordered = 0;      // distinct first-attempt periods (ties excluded)
    uint32_t n_a_first = 0;      // first attempt of a strictly before b
    uint32_t n_pass_a_not_b = 0; // passed a, never passed b
    uint32_t n_pass_b_not_a = 0;

    double p_order_ab() const { return static_cast<double>(n_a_first) / n_ordered; }
    double p_order_ba() const { return static_cast<double>(n_ordered - n_a_first) / n_ordered; }
    // bypass for edge a->b: passing b while never passing a
    double p_bypass_ab() const { return static_cast<double>(n_pass_b_not_a) / n_common; }
    double p_bypass_ba() const { return static_cast<double>(n_pass_a_not_b) / n_common; }
};

struct EdgeStats {
    uint32_t from = 0; // node index
    uint32_t to = 0;
    double p_order = 0;
    double p_bypass = 0;
    uint32_t n_common = 0;

    // Empirical support used by cycle breaking.
    double support() const { return p_order - p_bypass; }
};

struct RemovedEdge {
    EdgeStats edge;
    std::string reason;
};

// Inferred curriculum graph of one unit. Node index i refers to courses[i];
// courses ids are ascending, which equals lexicographic course-code order.
struct UnitGraph {
    uint32_t unit = kNoId;
    std::vector<uint32_t> courses;
    std::vector<double> levels;
    std::vector<EdgeStats> edges; // acyclic, sorted by (from, to)
    std::vector<RemovedEdge> removed_edges;
    bool degenerate = true;
    double theta_order = 0;
    double theta_bypass = 0;

    std::size_t n_nodes() const { return courses.size(); }
    std::vector<std::vector<uint32_t>> adjacency() const;
};

// Median first-attempt year relative to the student's own enrolment in the
// unit (enrolment year = year 1). One value per node of `courses`.
std::vector<double> compute_levels(const tables::UnitTables& ut,
                                   std::span<const uint32_t> courses);

// Eligible pairs only: n_common >= min_common and n_ordered >= min_ordered.
// year_granularity compares first attempts by year instead of (year, term).
std::vector<PairCounts> pair_stats(const tables::UnitTables& ut,
                                   std::span<const uint32_t> courses,
                                   int min_common, int min_ordered,
                                   bool year_granularity);
// Single-threaded reference; must produce identical output.
std::vector<PairCounts> pair_stats_serial(const tables::UnitTables& ut,
                                          std::span<const uint32_t> courses,
                                          int min_common, int min_ordered,
                                          bool year_granularity);

// Directed edge a->b iff p_order(a<b) >= theta_order and
// p_bypass(b while never a) <= theta_bypass.
std::vector<EdgeStats> infer_edges(std::span<const PairCounts> pairs,
                                   double theta_order, double theta_bypass);

// Greedy feedback-arc heuristic: while a non-trivial SCC exists (taken in
// topological order of the condensation), drop the in-component edge with
// the weakest support p_order - p_bypass; ties by lower n_common, then
// (from, to). Removed edges are logged with reason "cycle_break".
struct CycleBreakResult {
    std::vector<EdgeStats> edges;
    std::vector<RemovedEdge> removed;
};
CycleBreakResult break_cycles(std::size_t n_nodes, std::vector<EdgeStats> draft);

bool is_degenerate(std::size_t n_nodes, std::size_t n_edges, const AnalysisConfig& cfg);

// Full construction for one unit: nodes, levels, pair stats, edge inference,
// cycle breaking, sufficiency flag.
UnitGraph build_unit_graph(const tables::UnitTables& ut, const AnalysisConfig& cfg);

// --- DAG utilities ---------------------------------------------------------

// Kahn topological sort; false when a cycle remains.
bool topological_order(std::size_t n, std::span<const EdgeStats> edges,
                       std::vector<uint32_t>& order);

// Strongly connected components (Tarjan). Component ids come out in reverse
// topological order of the condensation.
std::vector<uint32_t> scc_components(std::size_t n, std::span<const EdgeStats> edges,
                                     uint32_t& n_components);

// Row-per-node reachability matrix (transitive closure), closure[u][v].
std::vector<std::vector<bool>> reachability(std::size_t n, std::span<const EdgeStats> edges);

// Edges (u,v) with an alternative u~>v path of length >= 2 removed.
std::vector<std::pair<uint32_t, uint32_t>> transitive_reduction(
    std::size_t n, std::span<const std::pair<uint32_t, uint32_t>> edges);

} // namespace curh::graphs
