#include <random>

#include "geewe/adversaries.hpp"
#include "geewe/errors.hpp"

namespace geewe {

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// draws are reduced by hand to keep instances identical across toolchains.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

bool chance(std::mt19937_64& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

// One of five evenly spaced points of [lo, hi].
Rational grid_point(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
    return lo + (hi - lo) * Rational(static_cast<std::int64_t>(below(rng, 5)), 4);
}

bool connected(int n, const std::vector<Edge>& edges) {
    std::vector<int> parent(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    int parts = n;
    for (const auto& e : edges) {
        int a = find(e.a);
        int b = find(e.b);
        if (a != b) {
            parent[static_cast<std::size_t>(a)] = b;
            --parts;
        }
    }
    return parts == 1;
}

constexpr int kConnectAttempts = 64;

}  // namespace

RandomInstance random_instance(const RandomSpec& spec) {
    if (spec.n < 2) throw InvalidInput("random instance needs n >= 2");
    if (spec.alpha < Rational(1)) throw InvalidInput("alpha must be at least 1");
    if (!(spec.density > 0.0 && spec.density <= 1.0)) throw InvalidInput("density must lie in (0, 1]");
    std::mt19937_64 rng(spec.seed);

    std::vector<Edge> edges;
    for (int attempt = 0;; ++attempt) {
        if (attempt == kConnectAttempts) {
            throw InvalidInput("density too low: no connected sample in " + std::to_string(kConnectAttempts) + " attempts");
        }
        edges.clear();
        for (VertexId a = 0; a < spec.n; ++a) {
            for (VertexId b = a + 1; b < spec.n; ++b) {
                if (spec.complete || chance(rng, spec.density)) edges.push_back({a, b, Rational(1), Rational(1)});
            }
        }
        if (connected(spec.n, edges)) break;
    }

    RandomInstance out;
    for (auto& e : edges) {
        if (spec.law == IntervalLaw::uniform) {
            e.upper = spec.alpha;
        } else {
            e.lower = Rational(static_cast<std::int64_t>(2 + below(rng, 7)), 2);
            e.upper = e.lower * grid_point(rng, Rational(1), spec.alpha);
        }
        out.weights.weights.push_back(grid_point(rng, e.lower, e.upper));
    }
    out.graph = EstimateGraph::checked(spec.n, std::move(edges), 0, spec.n - 1);
    return out;
}

WeightAssignment random_actuals(const EstimateGraph& graph, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    WeightAssignment w;
    for (const auto& e : graph.edges()) w.weights.push_back(grid_point(rng, e.lower, e.upper));
    return w;
}

}  // namespace geewe
