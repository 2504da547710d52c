#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curh/config.hpp"
#include "curh/graphs.hpp"

namespace curh::metrics {

struct StructuralMetrics {
    uint32_t unit = kNoId;
    uint32_t n_subjects = 0;
    uint32_t n_edges = 0;
    double density = 0;
    int32_t longest_path = 0;                // edge count
    std::vector<double> betweenness;         // per node index of the graph
    std::vector<uint32_t> bottleneck;        // node indices, strongest first
    double bottleneck_concentration = 0;
    double h_struct_raw = 0;                 // filled by h_struct()
};

// E / (N (N - 1)). Throws MetricError for N < 2.
double density(std::size_t n_nodes, std::size_t n_edges);

// Longest directed path in edges, via topological DP.
int32_t longest_path(std::size_t n, std::span<const graphs::EdgeStats> edges);

// Directed unweighted shortest-path betweenness (Brandes), contributions
// split across equal-length shortest paths, normalized by (N-1)(N-2).
std::vector<double> betweenness(std::size_t n, std::span<const graphs::EdgeStats> edges);
std::vector<double> betweenness_serial(std::size_t n, std::span<const graphs::EdgeStats> edges);

// Top ceil(N/10) nodes by betweenness (ties: higher level, then node order)
// and their share of total betweenness mass (0 when the mass is 0).
std::pair<std::vector<uint32_t>, double> bottleneck_concentration(
    std::span<const double> betweenness, std::span<const double> levels);

StructuralMetrics compute(const graphs::UnitGraph& g);

// Cross-unit standardization: h_struct_raw = z(density) + z(longest_path)
// + z(bottleneck_concentration) over the given (non-degenerate) units.
// Throws MetricError when fewer than two units are given.
void h_struct(std::span<StructuralMetrics> units);

} // namespace curh::metrics
