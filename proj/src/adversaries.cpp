#include "geewe/adversaries.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>

#include "geewe/errors.hpp"

namespace geewe {

namespace {

std::int64_t ipow(std::int64_t base, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > std::numeric_limits<std::int64_t>::max() / base) throw InvalidInput("recursive construction too large");
        r *= base;
    }
    return r;
}

}  // namespace

Rational clamp_alpha(const Rational& alpha) { return alpha > Rational(2) ? Rational(2) : alpha; }

// ---- recursive construction ------------------------------------------------

std::int64_t recursive_vertex_count(int k, int depth) {
    std::int64_t v = k + 1;
    for (int i = 1; i <= depth; ++i) v = 2 + k * v;
    return v;
}

std::int64_t recursive_edge_count(int k, int depth) {
    std::int64_t e = k;
    for (int i = 1; i <= depth; ++i) e = 4 * std::int64_t{k} + k * e;
    return e;
}

Rational recursive_online_bound(int k, int depth, const Rational& alpha) {
    const Rational a = clamp_alpha(alpha);
    return Rational(depth) * (a * Rational(k) + Rational(1)) * Rational(ipow(k, depth)) + Rational(ipow(k, depth + 1));
}

Rational recursive_offline_cost(int k, int depth) {
    return Rational(std::int64_t{depth} * (k + 1) * ipow(k, depth) + ipow(k, depth + 1));
}

RecursiveInstance build_recursive(RecursiveSpec spec) {
    if (spec.k < 2) throw InvalidInput("recursive construction needs k >= 2");
    if (spec.depth < 0) throw InvalidInput("recursive construction needs depth >= 0");
    if (spec.alpha < Rational(1)) throw InvalidInput("alpha must be at least 1");
    if (recursive_vertex_count(spec.k, spec.depth) > 100000) throw InvalidInput("recursive construction too large");
    spec.alpha = clamp_alpha(spec.alpha);

    RecursiveInstance inst;
    inst.spec = spec;
    std::vector<Edge> edges;
    VertexId next = 0;

    std::function<int(int, int)> build = [&](int depth, int parent) -> int {
        const int self = static_cast<int>(inst.components.size());
        inst.components.push_back({});
        inst.components[self].depth = depth;
        inst.components[self].parent = parent;
        if (depth == 0) {
            const VertexId lo = next;
            next += spec.k + 1;
            for (int j = 0; j < spec.k; ++j) {
                edges.push_back({lo + j, lo + j + 1, Rational(1), Rational(1)});
                inst.edge_owner.push_back(self);
            }
            auto& c = inst.components[self];
            c.first = lo;
            c.second = next - 1;
            c.lo = lo;
            c.hi = next;
            return self;
        }
        const VertexId p = next++;
        std::vector<int> kids;
        for (int j = 0; j < spec.k; ++j) kids.push_back(build(depth - 1, self));
        const VertexId q = next++;

        std::vector<std::vector<VertexId>> chain{{p}};
        for (int kid : kids) chain.push_back({inst.components[kid].first, inst.components[kid].second});
        chain.push_back({q});
        const Rational base(ipow(spec.k, depth));
        for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
            for (VertexId a : chain[j]) {
                for (VertexId b : chain[j + 1]) {
                    edges.push_back({a, b, base, spec.alpha * base});
                    inst.edge_owner.push_back(self);
                }
            }
        }
        auto& c = inst.components[self];
        c.first = p;
        c.second = q;
        c.children = std::move(kids);
        c.lo = p;
        c.hi = q + 1;
        return self;
    };
    build(spec.depth, -1);
    inst.graph = EstimateGraph::checked(next, std::move(edges), 0, next - 1);
    return inst;
}

RecursiveAdversary::RecursiveAdversary(const RecursiveInstance& inst)
    : inst_(inst),
      visit_index_(static_cast<std::size_t>(inst.graph.vertex_count()), -1),
      touched_(inst.components.size(), -1),
      start_(inst.components.size(), kNoVertex),
      leaf_of_(static_cast<std::size_t>(inst.graph.vertex_count()), -1) {
    // Components are stored parent before child, so later writes are deeper.
    for (std::size_t c = 0; c < inst.components.size(); ++c) {
        for (VertexId v = inst.components[c].lo; v < inst.components[c].hi; ++v) leaf_of_[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
}

void RecursiveAdversary::absorb(std::span<const VertexId> visit_order) {
    for (; seen_ < visit_order.size(); ++seen_) {
        const VertexId v = visit_order[seen_];
        const auto idx = static_cast<std::int64_t>(seen_);
        visit_index_[static_cast<std::size_t>(v)] = idx;
        for (int c = leaf_of_[static_cast<std::size_t>(v)]; c >= 0; c = inst_.components[static_cast<std::size_t>(c)].parent) {
            auto cs = static_cast<std::size_t>(c);
            if (touched_[cs] >= 0) break;
            touched_[cs] = idx;
            const auto& comp = inst_.components[cs];
            if (v != comp.first && v != comp.second) {
                if (c != 0) throw InvariantViolation("component entered away from its distinguished vertices");
                start_[cs] = comp.first;
            } else {
                start_[cs] = v;
            }
        }
    }
}

Rational RecursiveAdversary::price(EdgeId e) const {
    const auto owner = static_cast<std::size_t>(inst_.edge_owner[static_cast<std::size_t>(e)]);
    const auto& comp = inst_.components[owner];
    const Edge& edge = inst_.graph.edge(e);
    if (comp.depth == 0) return edge.lower;

    // Chain position, touch time and start of the member holding endpoint v.
    struct Member {
        std::size_t pos;
        std::int64_t touched;
        VertexId start;
    };
    auto member = [&](VertexId v) -> Member {
        if (v == comp.first) return {0, visit_index_[static_cast<std::size_t>(v)], v};
        if (v == comp.second) return {comp.children.size() + 1, visit_index_[static_cast<std::size_t>(v)], v};
        for (std::size_t j = 0; j < comp.children.size(); ++j) {
            const auto kid = static_cast<std::size_t>(comp.children[j]);
            const auto& c = inst_.components[kid];
            if (v >= c.lo && v < c.hi) return {j + 1, touched_[kid], start_[kid] == kNoVertex ? c.first : start_[kid]};
        }
        throw InvariantViolation("edge endpoint outside its owning component");
    };
    Member ma = member(edge.a);
    Member mb = member(edge.b);
    auto earlier = [](const Member& x, const Member& y) {
        if (x.touched >= 0 && y.touched >= 0) return x.touched < y.touched;
        if (x.touched >= 0 || y.touched >= 0) return x.touched >= 0;
        return x.pos < y.pos;  // neither touched: canonical order along the chain
    };
    const bool a_first = earlier(ma, mb);
    const Member& f = a_first ? ma : mb;
    const VertexId endpoint = a_first ? edge.a : edge.b;
    return endpoint == f.start ? edge.lower : edge.upper;
}

Rational RecursiveAdversary::reveal(EdgeId edge, VertexId, std::span<const VertexId> visit_order) {
    absorb(visit_order);
    return price(edge);
}

Rational RecursiveAdversary::complete(EdgeId edge, std::span<const VertexId> visit_order) {
    absorb(visit_order);
    return price(edge);
}

std::vector<VertexId> recursive_certificate(const RecursiveInstance& inst, const WeightAssignment& w) {
    const EstimateGraph& g = inst.graph;
    auto weight = [&](VertexId a, VertexId b) {
        auto e = g.edge_between(a, b);
        if (!e) throw InvariantViolation("recursive certificate used a missing edge");
        return w[*e];
    };
    struct Best {
        Rational cost;
        std::vector<VertexId> walk;  // first .. second
    };
    std::function<Best(int)> solve = [&](int c) -> Best {
        const auto& comp = inst.components[static_cast<std::size_t>(c)];
        Best out;
        if (comp.depth == 0) {
            for (VertexId v = comp.lo; v < comp.hi; ++v) {
                if (v > comp.lo) out.cost += weight(v - 1, v);
                out.walk.push_back(v);
            }
            return out;
        }
        std::vector<Best> kids;
        for (int kid : comp.children) kids.push_back(solve(kid));
        // state[o]: best prefix ending after child j traversed with orientation o
        // (0 = first..second, 1 = second..first)
        std::array<Best, 2> state;
        for (std::size_t j = 0; j < kids.size(); ++j) {
            const auto& kc = inst.components[static_cast<std::size_t>(comp.children[j])];
            std::array<Best, 2> next;
            for (int o = 0; o < 2; ++o) {
                const VertexId entry = o == 0 ? kc.first : kc.second;
                std::optional<Best> pick;
                for (int prev = 0; prev < (j == 0 ? 1 : 2); ++prev) {
                    Best cand;
                    VertexId exit;
                    if (j == 0) {
                        exit = comp.first;
                        cand.walk = {comp.first};
                    } else {
                        const auto& pc = inst.components[static_cast<std::size_t>(comp.children[j - 1])];
                        exit = prev == 0 ? pc.second : pc.first;
                        cand = state[static_cast<std::size_t>(prev)];
                    }
                    cand.cost += weight(exit, entry) + kids[j].cost;
                    if (o == 0) {
                        cand.walk.insert(cand.walk.end(), kids[j].walk.begin(), kids[j].walk.end());
                    } else {
                        cand.walk.insert(cand.walk.end(), kids[j].walk.rbegin(), kids[j].walk.rend());
                    }
                    if (!pick || cand.cost < pick->cost) pick = std::move(cand);
                }
                next[static_cast<std::size_t>(o)] = std::move(*pick);
            }
            state = std::move(next);
        }
        const auto& last = inst.components[static_cast<std::size_t>(comp.children.back())];
        std::optional<Best> pick;
        for (int o = 0; o < 2; ++o) {
            Best cand = state[static_cast<std::size_t>(o)];
            cand.cost += weight(o == 0 ? last.second : last.first, comp.second);
            cand.walk.push_back(comp.second);
            if (!pick || cand.cost < pick->cost) pick = std::move(cand);
        }
        return *pick;
    };
    return solve(0).walk;
}

// ---- phase adversaries ------------------------------------------------------

PhaseAdversary::PhaseAdversary(const EstimateGraph& graph, int phase, Rational alpha, std::string label)
    : graph_(graph), phase_(phase), alpha_(std::move(alpha)), label_(std::move(label)) {}

Rational PhaseAdversary::price(EdgeId e, std::span<const VertexId> visit_order) const {
    if (visit_order.size() <= static_cast<std::size_t>(phase_)) return Rational(1);
    const Edge& edge = graph_.edge(e);
    auto a_set = visit_order.first(static_cast<std::size_t>(phase_));
    bool touches_a = std::find(a_set.begin(), a_set.end(), edge.a) != a_set.end() ||
                     std::find(a_set.begin(), a_set.end(), edge.b) != a_set.end();
    return touches_a ? Rational(1) : alpha_;
}

Rational PhaseAdversary::reveal(EdgeId edge, VertexId, std::span<const VertexId> visit_order) { return price(edge, visit_order); }

Rational PhaseAdversary::complete(EdgeId edge, std::span<const VertexId> visit_order) { return price(edge, visit_order); }

PhaseInstance build_complete_adversary(int n, Rational alpha) {
    if (n < 3) throw InvalidInput("complete adversary needs at least 3 vertices");
    if (alpha < Rational(1)) throw InvalidInput("alpha must be at least 1");
    PhaseInstance out;
    out.alpha = clamp_alpha(alpha);
    std::vector<Edge> edges;
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) edges.push_back({a, b, Rational(1), out.alpha});
    }
    out.graph = EstimateGraph::checked(n, std::move(edges), 0, n - 1);
    out.phase = n / 2;
    return out;
}

EstimateGraph complete_bipartite(int left, int right, Rational alpha) {
    if (left < 1 || right < 1) throw InvalidInput("bipartite sides must be nonempty");
    if (left != right && left != right + 1) throw InvalidInput("bipartite sides must be n,n or n+1,n");
    if (alpha < Rational(1)) throw InvalidInput("alpha must be at least 1");
    std::vector<Edge> edges;
    for (VertexId a = 0; a < left; ++a) {
        for (VertexId b = left; b < left + right; ++b) edges.push_back({a, b, Rational(1), alpha});
    }
    const VertexId t = left == right ? left + right - 1 : left - 1;
    return EstimateGraph::checked(left + right, std::move(edges), 0, t);
}

PhaseInstance build_bipartite_adversary(int left, int right, Rational alpha) {
    PhaseInstance out;
    out.alpha = clamp_alpha(alpha);
    out.graph = complete_bipartite(left, right, out.alpha);
    out.phase = right;
    return out;
}

}  // namespace geewe
