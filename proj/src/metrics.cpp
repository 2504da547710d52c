#include "curh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "curh/errors.hpp"
#include "curh/stats.hpp"
#include "curh/util.hpp"

namespace curh::metrics {

double density(std::size_t n_nodes, std::size_t n_edges) {
    if (n_nodes < 2) throw MetricError("density undefined for fewer than 2 nodes");
    return static_cast<double>(n_edges) /
           (static_cast<double>(n_nodes) * static_cast<double>(n_nodes - 1));
}

int32_t longest_path(std::size_t n, std::span<const graphs::EdgeStats> edges) {
    std::vector<uint32_t> order;
    if (!graphs::topological_order(n, edges, order))
        throw MetricError("longest_path requires an acyclic graph");
    std::vector<std::vector<uint32_t>> adj(n);
    for (const auto& e : edges) adj[e.from].push_back(e.to);
    std::vector<int32_t> dist(n, 0);
    int32_t best = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const uint32_t u = *it;
        for (uint32_t v : adj[u]) dist[u] = std::max(dist[u], dist[v] + 1);
        best = std::max(best, dist[u]);
    }
    return best;
}

namespace {

void brandes_source(uint32_t s, const std::vector<std::vector<uint32_t>>& adj,
                    std::vector<double>& acc, std::vector<int32_t>& distBuf,
                    std::vector<double>& sigmaBuf, std::vector<double>& deltaBuf,
                    std::vector<uint32_t>& orderBuf,
                    std::vector<std::vector<uint32_t>>& predBuf) {
    const std::size_t n = adj.size();
    std::fill(distBuf.begin(), distBuf.end(), -1);
    std::fill(sigmaBuf.begin(), sigmaBuf.end(), 0.0);
    std::fill(deltaBuf.begin(), deltaBuf.end(), 0.0);
    for (auto& p : predBuf) p.clear();
    orderBuf.clear();

    distBuf[s] = 0;
    sigmaBuf[s] = 1.0;
    std::size_t head = 0;
    orderBuf.push_back(s);
    while (head < orderBuf.size()) {
        const uint32_t v = orderBuf[head++];
        for (uint32_t w : adj[v]) {
            if (distBuf[w] < 0) {
                distBuf[w] = distBuf[v] + 1;
                orderBuf.push_back(w);
            }
            if (distBuf[w] == distBuf[v] + 1) {
                sigmaBuf[w] += sigmaBuf[v];
                predBuf[w].push_back(v);
            }
        }
    }
    for (std::size_t i = orderBuf.size(); i-- > 0;) {
        const uint32_t w = orderBuf[i];
        for (uint32_t v : predBuf[w]) {
            deltaBuf[v] += sigmaBuf[v] / sigmaBuf[w] * (1.0 + deltaBuf[w]);
        }
        if (w != s) acc[w] += deltaBuf[w];
    }
    (void)n;
}

std::vector<double> betweenness_impl(std::size_t n, std::span<const graphs::EdgeStats> edges,
                                     bool parallel) {
    std::vector<std::vector<uint32_t>> adj(n);
    for (const auto& e : edges) adj[e.from].push_back(e.to);

    std::vector<double> total(n, 0.0);
    if (parallel && n > 1) {
        const int threads = util::thread_count();
        std::vector<std::vector<double>> local(threads, std::vector<double>(n, 0.0));
#pragma omp parallel
        {
            std::vector<int32_t> dist(n);
            std::vector<double> sigma(n), delta(n);
            std::vector<uint32_t> order;
            order.reserve(n);
            std::vector<std::vector<uint32_t>> pred(n);
            int tid = 0;
#ifdef _OPENMP
            tid = omp_get_thread_num();
#endif
#pragma omp for schedule(static)
            for (int64_t s = 0; s < static_cast<int64_t>(n); ++s) {
                brandes_source(static_cast<uint32_t>(s), adj, local[tid], dist, sigma, delta,
                               order, pred);
            }
        }
        // Fixed merge order keeps the float sum reproducible for a given
        // thread count.
        for (const auto& buf : local)
            for (std::size_t v = 0; v < n; ++v) total[v] += buf[v];
    } else {
        std::vector<int32_t> dist(n);
        std::vector<double> sigma(n), delta(n);
        std::vector<uint32_t> order;
        order.reserve(n);
        std::vector<std::vector<uint32_t>> pred(n);
        for (uint32_t s = 0; s < n; ++s)
            brandes_source(s, adj, total, dist, sigma, delta, order, pred);
    }

    if (n > 2) {
        const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2);
        for (auto& v : total) v /= norm;
    } else {
        std::fill(total.begin(), total.end(), 0.0);
    }
    return total;
}

} // namespace

std::vector<double> betweenness(std::size_t n, std::span<const graphs::EdgeStats> edges) {
    return betweenness_impl(n, edges, true);
}

std::vector<double> betweenness_serial(std::size_t n, std::span<const graphs::EdgeStats> edges) {
    return betweenness_impl(n, edges, false);
}

std::pair<std::vector<uint32_t>, double> bottleneck_concentration(
    std::span<const double> betweenness, std::span<const double> levels) {
    const std::size_t n = betweenness.size();
    const std::size_t k = (n + 9) / 10; // ceil(N/10)
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
        return std::make_tuple(-betweenness[a], -levels[a], a) <
               std::make_tuple(-betweenness[b], -levels[b], b);
    });
    order.resize(std::min(k, n));
    double total = 0.0, top = 0.0;
    for (double v : betweenness) total += v;
    for (uint32_t v : order) top += betweenness[v];
    return {std::move(order), total > 0.0 ? top / total : 0.0};
}

StructuralMetrics compute(const graphs::UnitGraph& g) {
    StructuralMetrics m;
    m.unit = g.unit;
    m.n_subjects = static_cast<uint32_t>(g.n_nodes());
    m.n_edges = static_cast<uint32_t>(g.edges.size());
    m.density = density(g.n_nodes(), g.edges.size());
    m.longest_path = longest_path(g.n_nodes(), g.edges);
    m.betweenness = betweenness(g.n_nodes(), g.edges);
    auto [set, conc] = bottleneck_concentration(m.betweenness, g.levels);
    m.bottleneck = std::move(set);
    m.bottleneck_concentration = conc;
    return m;
}

void h_struct(std::span<StructuralMetrics> units) {
    if (units.size() < 2)
        throw MetricError("cross-unit standardization requires at least 2 non-degenerate units");
    std::vector<double> d(units.size()), lp(units.size()), bc(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
        d[i] = units[i].density;
        lp[i] = static_cast<double>(units[i].longest_path);
        bc[i] = units[i].bottleneck_concentration;
    }
    const auto zd = stats::zscores(d);
    const auto zl = stats::zscores(lp);
    const auto zb = stats::zscores(bc);
    for (std::size_t i = 0; i < units.size(); ++i)
        units[i].h_struct_raw = zd[i] + zl[i] + zb[i];
}

} // namespace curh::metrics
