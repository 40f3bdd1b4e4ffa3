#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "geewe/graph.hpp"

namespace geewe::testing {

inline Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

inline Edge E(VertexId a, VertexId b, Rational lo = 1, Rational hi = 1) { return Edge{a, b, lo, hi}; }

inline EstimateGraph path_graph(int n, Rational lo = 1, Rational hi = 1) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back(E(i, i + 1, lo, hi));
    return EstimateGraph::checked(n, edges, 0, n - 1);
}

inline EstimateGraph complete_graph(int n, Rational lo, Rational hi, VertexId s, VertexId t) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back(E(i, j, lo, hi));
    return EstimateGraph::checked(n, edges, s, t);
}

inline std::vector<Rational> uniform_weights(const EstimateGraph& g, Rational w) {
    return std::vector<Rational>(g.edges().size(), w);
}

// Minimum over all simple paths, by exhaustive DFS. Independent of Dijkstra.
inline std::optional<Rational> simple_path_distance(const EstimateGraph& g, std::span<const Rational> w, VertexId from,
                                                    VertexId to) {
    std::optional<Rational> best;
    std::vector<bool> on(static_cast<std::size_t>(g.vertex_count()), false);
    std::function<void(VertexId, Rational)> dfs = [&](VertexId v, Rational acc) {
        if (v == to) {
            if (!best || acc < *best) best = acc;
            return;
        }
        on[static_cast<std::size_t>(v)] = true;
        for (const auto& nb : g.neighbors(v)) {
            if (!on[static_cast<std::size_t>(nb.vertex)]) dfs(nb.vertex, acc + w[static_cast<std::size_t>(nb.edge)]);
        }
        on[static_cast<std::size_t>(v)] = false;
    };
    dfs(from, Rational(0));
    return best;
}

// Connected random graph: random spanning tree plus extra edges with probability p.
inline EstimateGraph random_connected(std::mt19937_64& rng, int n, double p) {
    std::vector<Edge> edges;
    std::vector<std::vector<bool>> has(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int v = 1; v < n; ++v) {
        int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
        edges.push_back(E(u, v));
        has[u][v] = has[v][u] = true;
    }
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (!has[a][b] && coin(rng) < p) edges.push_back(E(a, b));
    return EstimateGraph::checked(n, edges, 0, n - 1);
}

inline std::vector<Rational> random_weights(std::mt19937_64& rng, const EstimateGraph& g, int max_num = 12, int den = 4) {
    std::vector<Rational> w;
    std::uniform_int_distribution<int> num(1, max_num);
    for (int e = 0; e < g.edge_count(); ++e) w.push_back(Rational(num(rng), den));
    return w;
}

}  // namespace geewe::testing
