#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <random>

#include "geewe/adversaries.hpp"
#include "geewe/errors.hpp"
#include "geewe/explorers.hpp"

namespace geewe {

namespace {

struct Cell {
    int row;
    int col;
    bool operator==(const Cell&) const = default;
};

bool touching(Cell a, Cell b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col) == 1; }

/*
 * Hamiltonian path of the m x m grid made of 2x2 blocks, each walked as a U,
 * blocks taken row by row in serpentine order. For odd m the blocks cover
 * the top-left (m-1) x (m-1) square and the path finishes along the bottom
 * row and up the right column.
 */
std::vector<Cell> block_path(int m) {
    const bool even = m % 2 == 0;
    const int core = even ? m : m - 1;
    const int blocks = core / 2;
    std::vector<Cell> order;
    for (int br = 0; br < blocks; ++br) {
        const bool leftwards = even ? br % 2 == 1 : (blocks - 1 - br) % 2 == 0;
        for (int j = 0; j < blocks; ++j) order.push_back({br, leftwards ? blocks - 1 - j : j});
    }
    auto cycle = [](Cell b) {
        return std::array<Cell, 4>{Cell{2 * b.row, 2 * b.col}, Cell{2 * b.row, 2 * b.col + 1},
                                   Cell{2 * b.row + 1, 2 * b.col + 1}, Cell{2 * b.row + 1, 2 * b.col}};
    };
    const Cell finish{core - 1, 0};
    std::vector<Cell> path;
    std::function<bool(std::size_t, Cell)> place = [&](std::size_t i, Cell entry) {
        const auto cyc = cycle(order[i]);
        const auto k = static_cast<int>(std::find(cyc.begin(), cyc.end(), entry) - cyc.begin());
        for (int dir : {1, -1}) {
            for (int j = 0; j < 4; ++j) path.push_back(cyc[static_cast<std::size_t>(((k + dir * j) % 4 + 4) % 4)]);
            if (i + 1 == order.size()) {
                if (even || path.back() == finish) return true;
            } else {
                for (Cell next : cycle(order[i + 1])) {
                    if (touching(path.back(), next) && place(i + 1, next)) return true;
                }
            }
            path.resize(path.size() - 4);
        }
        return false;
    };
    bool placed = false;
    for (Cell first : cycle(order.front())) {
        if ((placed = place(0, first))) break;
    }
    if (!placed) throw InvariantViolation("grid trap: no block path for m = " + std::to_string(m));
    if (!even) {
        for (int c = 0; c < m; ++c) path.push_back({m - 1, c});
        for (int r = m - 2; r >= 0; --r) path.push_back({r, m - 1});
    }
    return path;
}

// Position of the first deviation from the trap path, or -1, and the plan held then.
// Decisions before `from` are taken as following the path without asking the
// explorer; they only see weights that have not changed since the last run.
struct Simulation {
    int deviation = -1;
    std::vector<VertexId> plan;
    Rational cost;
};

Simulation simulate(const EstimateGraph& g, const WeightAssignment& w, const SolverLimits& limits, VertexId from) {
    FixedAssignment src(w);
    AdaptiveExplorer ex(limits);
    Episode ep(g, src);
    Simulation out;
    while (!ep.view().finished()) {
        const VertexId pos = ep.view().position;
        const VertexId next = pos < from ? pos + 1 : ex.decide(ep.view());
        if (next != pos + 1) {
            out.deviation = pos;
            out.plan = ex.plans().back().walk;
            return out;
        }
        ep.move(next);
    }
    out.cost = ep.view().paid;
    return out;
}

using Matrix = std::vector<std::vector<std::int64_t>>;

std::int64_t length(const Matrix& d, const std::vector<std::size_t>& o) {
    std::int64_t c = 0;
    for (std::size_t i = 1; i < o.size(); ++i) c += d[o[i - 1]][o[i]];
    return c;
}

// Segment reversal and relocation of up to three nodes until neither helps; ends stay fixed.
void descend(const Matrix& d, std::vector<std::size_t>& o) {
    const std::size_t n = o.size();
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j + 1 < n; ++j) {
                if (d[o[i - 1]][o[j]] + d[o[i]][o[j + 1]] < d[o[i - 1]][o[i]] + d[o[j]][o[j + 1]]) {
                    std::reverse(o.begin() + static_cast<std::ptrdiff_t>(i), o.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    again = true;
                }
            }
        }
        for (std::size_t len = 1; len <= 3; ++len) {
            for (std::size_t i = 1; i + len < n; ++i) {
                const std::size_t p = o[i - 1], a = o[i], b = o[i + len - 1], q = o[i + len];
                const std::int64_t gain = d[p][a] + d[b][q] - d[p][q];
                for (std::size_t k = 0; k + 1 < n; ++k) {
                    if (k + 1 >= i && k < i + len) continue;
                    const std::size_t x = o[k], y = o[k + 1];
                    const std::int64_t straight = d[x][a] + d[b][y] - d[x][y];
                    const std::int64_t flipped = d[x][b] + d[a][y] - d[x][y];
                    if (std::min(straight, flipped) >= gain) continue;
                    std::vector<std::size_t> seg(o.begin() + static_cast<std::ptrdiff_t>(i), o.begin() + static_cast<std::ptrdiff_t>(i + len));
                    if (flipped < straight) std::reverse(seg.begin(), seg.end());
                    std::vector<std::size_t> next;
                    for (std::size_t r = 0; r < n; ++r) {
                        if (r >= i && r < i + len) continue;
                        next.push_back(o[r]);
                        if (r == k) next.insert(next.end(), seg.begin(), seg.end());
                    }
                    o = std::move(next);
                    again = true;
                    break;
                }
            }
        }
    }
}

// Local descent restarted from double-bridge kicks of the best order so far.
std::vector<std::size_t> improve(const Matrix& d, std::vector<std::size_t> order, std::uint64_t seed) {
    constexpr int kKicks = 300;
    descend(d, order);
    std::int64_t best = length(d, order);
    const std::size_t n = order.size();
    if (n < 6) return order;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> cut(1, n - 2);
    for (int kick = 0; kick < kKicks; ++kick) {
        std::array<std::size_t, 3> c{cut(rng), cut(rng), cut(rng)};
        std::sort(c.begin(), c.end());
        if (c[0] == c[1] || c[1] == c[2]) continue;
        std::vector<std::size_t> cand(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(c[0]));
        cand.insert(cand.end(), order.begin() + static_cast<std::ptrdiff_t>(c[1]), order.begin() + static_cast<std::ptrdiff_t>(c[2]));
        cand.insert(cand.end(), order.begin() + static_cast<std::ptrdiff_t>(c[0]), order.begin() + static_cast<std::ptrdiff_t>(c[1]));
        cand.insert(cand.end(), order.begin() + static_cast<std::ptrdiff_t>(c[2]), order.end());
        descend(d, cand);
        if (const std::int64_t c2 = length(d, cand); c2 < best) {
            best = c2;
            order = std::move(cand);
        }
    }
    return order;
}

std::vector<VertexId> expand(const MetricClosure& mc, const std::vector<std::size_t>& order) {
    std::vector<VertexId> walk{mc.nodes[order.front()]};
    for (std::size_t i = 1; i < order.size(); ++i) {
        auto leg = mc.expand(order[i - 1], order[i]);
        walk.insert(walk.end(), leg.begin() + 1, leg.end());
    }
    return walk;
}

// Cheapest covering walk found from the trap order and from a nearest-first order.
std::vector<VertexId> certificate_walk(const EstimateGraph& g, const WeightAssignment& w) {
    const int n = g.vertex_count();
    std::vector<VertexId> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    MetricClosure mc = metric_closure(g, w.weights, all);
    // Weights are 1 or alpha, so scaling by alpha's denominator makes distances integral.
    const Rational scale(alpha_of(g).alpha.den());
    Matrix d(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n)));
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) d[i][j] = (mc.distance[i][j] * scale).num();
    }

    std::vector<std::size_t> along(static_cast<std::size_t>(n));
    std::iota(along.begin(), along.end(), std::size_t{0});

    std::vector<std::size_t> nearest{0};
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    used[0] = true;
    used[static_cast<std::size_t>(n - 1)] = true;
    for (int step = 2; step < n; ++step) {
        std::size_t cur = nearest.back();
        std::size_t pick = 0;
        for (std::size_t v = 1; v + 1 < static_cast<std::size_t>(n); ++v) {
            if (!used[v] && (pick == 0 || d[cur][v] < d[cur][pick])) pick = v;
        }
        used[pick] = true;
        nearest.push_back(pick);
    }
    nearest.push_back(static_cast<std::size_t>(n - 1));

    std::vector<VertexId> best;
    Rational best_cost;
    for (auto& start : {along, nearest}) {
        auto walk = expand(mc, improve(d, start, static_cast<std::uint64_t>(n)));
        Rational c = evaluate_walk(g, w.weights, walk).cost();
        if (best.empty() || c < best_cost) {
            best = std::move(walk);
            best_cost = c;
        }
    }
    return best;
}

}  // namespace

GridTrap build_grid_trap(GridSpec spec, const SolverLimits& limits) {
    const int m = spec.m;
    if (m < 4 || m > 8) throw InvalidInput("grid trap needs 4 <= m <= 8 (adaptive planning must stay exact)");
    if (spec.alpha < Rational(1) || spec.alpha >= Rational(2)) throw InvalidInput("grid trap needs 1 <= alpha < 2");
    const int n = m * m;
    const auto path = block_path(m);

    // Vertex ids follow the trap path, so s = 0, t = n - 1 and ties in the
    // adaptive explorer's lexicographic rule fall along the path.
    std::vector<VertexId> id(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < path.size(); ++i) id[static_cast<std::size_t>(path[i].row * m + path[i].col)] = static_cast<VertexId>(i);
    auto label = [&](int r, int c) { return id[static_cast<std::size_t>(r * m + c)]; };

    std::vector<Edge> edges;
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            if (c + 1 < m) edges.push_back({label(r, c), label(r, c + 1), Rational(1), spec.alpha});
            if (r + 1 < m) edges.push_back({label(r, c), label(r + 1, c), Rational(1), spec.alpha});
        }
    }
    GridTrap trap;
    trap.spec = spec;
    trap.graph = EstimateGraph::checked(n, edges, 0, n - 1);
    for (VertexId v = 0; v < n; ++v) trap.trap_path.push_back(v);
    for (Cell c : path) trap.cells.emplace_back(c.row, c.col);

    // Colours alternate along the path, so even labels share the colour of s.
    // An off-path edge is cheap when its earlier endpoint has that colour.
    auto& w = trap.weights.weights;
    for (const auto& e : trap.graph.edges()) {
        const bool on_path = std::abs(e.a - e.b) == 1;
        w.push_back(!on_path && std::min(e.a, e.b) % 2 == 0 ? Rational(1) : spec.alpha);
    }

    // Whenever the explorer leaves the path, the first cheap edge in the
    // plan that lured it away goes back to alpha.
    for (VertexId from = 0;;) {
        Simulation sim = simulate(trap.graph, trap.weights, limits, from);
        if (sim.deviation < 0) {
            trap.adaptive_cost = sim.cost;
            break;
        }
        EdgeId lure = kNoEdge;
        for (std::size_t i = 1; i < sim.plan.size() && lure == kNoEdge; ++i) {
            EdgeId e = *trap.graph.edge_between(sim.plan[i - 1], sim.plan[i]);
            if (w[static_cast<std::size_t>(e)] < spec.alpha) lure = e;
        }
        if (lure == kNoEdge) throw InvariantViolation("trap not effective for these parameters: explorer leaves the path at " + std::to_string(sim.deviation));
        w[static_cast<std::size_t>(lure)] = spec.alpha;
        from = std::min(trap.graph.edge(lure).a, trap.graph.edge(lure).b);
        ++trap.repairs;
    }
    trap.cheap_edges = static_cast<int>(std::count(w.begin(), w.end(), Rational(1)));
    if (spec.alpha == Rational(1)) trap.cheap_edges = 0;

    trap.certificate = certificate_walk(trap.graph, trap.weights);
    trap.certificate_cost = evaluate_walk(trap.graph, w, trap.certificate).cost();

    const Rational expected = Rational(n - 1) * spec.alpha;
    const Rational allowance = Rational(6 * m) * spec.alpha + Rational((m - 2) * m);
    if (trap.adaptive_cost != expected) {
        throw InvariantViolation("trap not effective for these parameters: adaptive pays " + trap.adaptive_cost.str() + ", expected " + expected.str());
    }
    if (trap.certificate_cost > allowance) {
        throw InvariantViolation("trap not effective for these parameters: certificate costs " + trap.certificate_cost.str() + " > " + allowance.str());
    }
    if (spec.alpha > Rational(1) && trap.certificate_cost >= trap.adaptive_cost) {
        throw InvariantViolation("trap not effective for these parameters: certificate does not beat the adaptive walk");
    }
    return trap;
}

}  // namespace geewe
