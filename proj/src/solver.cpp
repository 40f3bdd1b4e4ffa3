#include "geewe/solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "geewe/errors.hpp"

namespace geewe {

const char* to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::subset_dp: return "subset_dp";
        case SolveMethod::branch_and_bound: return "branch_and_bound";
        case SolveMethod::brute_force: return "brute_force";
    }
    return "?";
}

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
constexpr std::size_t kTreeBoundFrom = 12;
constexpr int kTreeRounds = 30;
constexpr int kRootTreeRounds = 400;

struct Prepared {
    MetricClosure closure;
    std::size_t origin = 0;       // closure index
    std::size_t destination = 0;  // closure index
    std::vector<std::size_t> intermediates;  // closure indices, ascending vertex id
};

Prepared prepare(const EstimateGraph& graph, const CoverTask& task) {
    const int n = graph.vertex_count();
    auto in_range = [n](VertexId v) { return v >= 0 && v < n; };
    if (task.weights.size() != graph.edges().size()) throw InvalidInput("cover task weights must cover every edge");
    if (!in_range(task.origin) || !in_range(task.destination)) throw InvalidInput("cover task endpoint out of range");
    std::vector<VertexId> required = task.must_visit;
    for (VertexId v : required) {
        if (!in_range(v)) throw InvalidInput("cover task vertex out of range");
    }
    required.push_back(task.origin);
    required.push_back(task.destination);

    Prepared p;
    p.closure = metric_closure(graph, task.weights, std::move(required));
    p.origin = p.closure.index_of(task.origin);
    p.destination = p.closure.index_of(task.destination);
    for (std::size_t i = 0; i < p.closure.size(); ++i) {
        if (i != p.origin && i != p.destination) p.intermediates.push_back(i);
    }
    return p;
}

// Closure distances as integers over a common denominator.
struct ScaledDistances {
    std::size_t k = 0;
    std::int64_t scale = 1;
    std::vector<std::int64_t> d;

    std::int64_t operator()(std::size_t i, std::size_t j) const { return d[i * k + j]; }
};

ScaledDistances scale_distances(const MetricClosure& mc) {
    ScaledDistances s;
    s.k = mc.size();
    try {
        for (const auto& row : mc.distance) {
            for (const auto& x : row) s.scale = lcm_checked(s.scale, x.den());
        }
    } catch (const std::overflow_error&) {
        throw SolverCapExceeded("instance too large for exact oracle: weight denominators overflow 64-bit scaling");
    }
    const __int128 limit = static_cast<__int128>(kInf) / static_cast<__int128>(std::max<std::size_t>(s.k, 1) + 1);
    s.d.resize(s.k * s.k);
    for (std::size_t i = 0; i < s.k; ++i) {
        for (std::size_t j = 0; j < s.k; ++j) {
            const Rational& x = mc.distance[i][j];
            __int128 v = static_cast<__int128>(x.num()) * (s.scale / x.den());
            if (v > limit) throw SolverCapExceeded("instance too large for exact oracle: scaled weights overflow");
            s.d[i * s.k + j] = static_cast<std::int64_t>(v);
        }
    }
    return s;
}

struct Plan {
    std::vector<std::size_t> order;  // closure indices, origin .. destination
    std::int64_t cost = 0;
    std::uint64_t expansions = 0;
};

// Subset DP over intermediates; h[mask][j] is the cheapest finish from
// intermediate j once exactly the intermediates in mask have been visited.
Plan held_karp(const ScaledDistances& D, const Prepared& p) {
    const std::size_t m = p.intermediates.size();
    const auto& I = p.intermediates;
    Plan plan;
    if (m == 0) {
        plan.order = {p.origin, p.destination};
        plan.cost = D(p.origin, p.destination);
        return plan;
    }
    const std::size_t full = (std::size_t{1} << m) - 1;
    std::vector<std::int64_t> h((full + 1) * m, kInf);
    auto at = [&](std::size_t mask, std::size_t j) -> std::int64_t& { return h[mask * m + j]; };

    for (std::size_t j = 0; j < m; ++j) at(full, j) = D(I[j], p.destination);
    for (std::size_t mask = full; mask-- > 1;) {
        for (std::size_t j = 0; j < m; ++j) {
            if (!(mask >> j & 1U)) continue;
            std::int64_t best = kInf;
            for (std::size_t u = 0; u < m; ++u) {
                if (mask >> u & 1U) continue;
                std::int64_t c = D(I[j], I[u]) + at(mask | (std::size_t{1} << u), u);
                if (c < best) best = c;
            }
            at(mask, j) = best;
        }
    }

    std::int64_t best = kInf;
    for (std::size_t u = 0; u < m; ++u) best = std::min(best, D(p.origin, I[u]) + at(std::size_t{1} << u, u));
    plan.cost = best;

    // Forward reconstruction taking the smallest feasible vertex each time
    // yields the lexicographically smallest optimal order.
    plan.order.push_back(p.origin);
    std::size_t cur = p.origin;
    std::size_t mask = 0;
    std::int64_t remaining = best;
    for (std::size_t step = 0; step < m; ++step) {
        bool found = false;
        for (std::size_t u = 0; u < m; ++u) {
            if (mask >> u & 1U) continue;
            std::size_t next = mask | (std::size_t{1} << u);
            if (D(cur, I[u]) + at(next, u) == remaining) {
                remaining -= D(cur, I[u]);
                cur = I[u];
                mask = next;
                plan.order.push_back(cur);
                found = true;
                break;
            }
        }
        if (!found) throw InvariantViolation("subset DP reconstruction failed");
    }
    plan.order.push_back(p.destination);
    return plan;
}

/*
 * Exact depth-first branch-and-bound over the metric closure.
 *
 * Local ids: 0..m-1 intermediates, m origin, m+1 destination. Phase one
 * finds the optimal cost (nearest-first child order); phase two walks children
 * in id order and stops at the first plan of that cost, which is the
 * lexicographically smallest optimal order.
 */
class BranchAndBound {
public:
    BranchAndBound(const ScaledDistances& D, const Prepared& p, std::uint64_t budget)
        : D_(D), p_(p), m_(p.intermediates.size()), budget_(budget) {
        if (m_ > 63) throw SolverCapExceeded("instance too large for exact oracle: more than 64 required vertices");
        full_ = m_ == 0 ? 0 : (m_ == 64 ? ~0ULL : ((1ULL << m_) - 1));
        build_lists();
    }

    Plan solve(const std::vector<std::size_t>& hint_order) {
        best_ = kInf;
        offer(hint_order);
        offer(id_order());
        offer(greedy_order());
        path_.assign(1, m_);
        phase_one(m_, 0, 0);
        const std::int64_t optimum = best_;

        seen_.clear();
        path_.assign(1, m_);
        if (!phase_two(m_, 0, 0, optimum)) throw InvariantViolation("branch-and-bound lost the optimum");

        Plan plan;
        plan.cost = optimum;
        plan.expansions = expansions_;
        for (std::size_t local : path_) plan.order.push_back(closure_index(local));
        plan.order.push_back(p_.destination);
        return plan;
    }

    std::size_t local_of_closure(std::size_t ci) const {
        if (ci == p_.origin) return m_;
        if (ci == p_.destination) return m_ + 1;
        auto it = std::lower_bound(p_.intermediates.begin(), p_.intermediates.end(), ci);
        return static_cast<std::size_t>(it - p_.intermediates.begin());
    }

private:
    std::size_t closure_index(std::size_t local) const {
        if (local == m_) return p_.origin;
        if (local == m_ + 1) return p_.destination;
        return p_.intermediates[local];
    }
    std::int64_t dist(std::size_t a, std::size_t b) const { return D_(closure_index(a), closure_index(b)); }

    // Incumbents only tighten pruning; the optimum does not depend on them.
    void offer(const std::vector<std::size_t>& order) {
        if (order.empty()) return;
        std::int64_t c = 0;
        for (std::size_t i = 1; i < order.size(); ++i) c += D_(order[i - 1], order[i]);
        if (c < best_) {
            best_ = c;
            best_order_ = order;
        }
    }
    std::vector<std::size_t> id_order() const {
        std::vector<std::size_t> order{p_.origin};
        order.insert(order.end(), p_.intermediates.begin(), p_.intermediates.end());
        order.push_back(p_.destination);
        return order;
    }
    std::vector<std::size_t> greedy_order() const {
        std::vector<std::size_t> order{p_.origin};
        std::vector<bool> used(m_, false);
        std::size_t cur = m_;
        for (std::size_t step = 0; step < m_; ++step) {
            std::size_t pick = m_;
            for (std::size_t u = 0; u < m_; ++u) {
                if (!used[u] && (pick == m_ || dist(cur, u) < dist(cur, pick))) pick = u;
            }
            used[pick] = true;
            order.push_back(closure_index(pick));
            cur = pick;
        }
        order.push_back(p_.destination);
        return order;
    }

    void build_lists() {
        in_.resize(m_ + 2);
        out_.resize(m_ + 2);
        for (std::size_t x = 0; x < m_ + 2; ++x) {
            if (x == m_) continue;  // origin is never entered
            for (std::size_t y = 0; y <= m_; ++y) {
                if (y != x) in_[x].push_back(y);
            }
            std::sort(in_[x].begin(), in_[x].end(), [&](std::size_t a, std::size_t b) {
                return dist(a, x) != dist(b, x) ? dist(a, x) < dist(b, x) : a < b;
            });
        }
        for (std::size_t y = 0; y <= m_; ++y) {
            for (std::size_t x = 0; x < m_ + 2; ++x) {
                if (x != y && x != m_) out_[y].push_back(x);
            }
            std::sort(out_[y].begin(), out_[y].end(), [&](std::size_t a, std::size_t b) {
                return dist(y, a) != dist(y, b) ? dist(y, a) < dist(y, b) : a < b;
            });
        }
    }

    bool remaining(std::uint64_t mask, std::size_t local) const { return local < m_ && !(mask >> local & 1ULL); }

    // Every remaining vertex and the destination are entered once from the
    // current vertex or a remaining one; every such source leaves once.
    std::int64_t lower_bound(std::size_t cur, std::uint64_t mask) const {
        const std::uint64_t rem = full_ & ~mask;
        if (rem == 0) return dist(cur, m_ + 1);
        std::int64_t in_sum = 0;
        std::int64_t out_sum = 0;
        auto entering = [&](std::size_t x) {
            for (std::size_t y : in_[x]) {
                if (y == cur || remaining(mask, y)) return dist(y, x);
            }
            return kInf;
        };
        auto leaving = [&](std::size_t y, bool allow_destination) {
            for (std::size_t x : out_[y]) {
                if ((x == m_ + 1 && allow_destination) || (x != y && remaining(mask, x))) return dist(y, x);
            }
            return kInf;
        };
        for (std::uint64_t bits = rem; bits != 0; bits &= bits - 1) {
            auto x = static_cast<std::size_t>(__builtin_ctzll(bits));
            in_sum += entering(x);
            out_sum += leaving(x, true);
        }
        in_sum += entering(m_ + 1);
        out_sum += leaving(cur, false);
        return std::max(in_sum, out_sum);
    }

    /*
     * A covering order is a spanning tree of {cur, remaining, destination}
     * with degree 1 at both ends and 2 elsewhere. Relaxing the degrees with
     * integer multipliers gives a bound valid for any multipliers; they are
     * kept between calls as a warm start. Stops early once `target` is met.
     */
    std::int64_t tree_bound(std::size_t cur, std::uint64_t mask, std::int64_t target) {
        nodes_.clear();
        nodes_.push_back(cur);
        for (std::uint64_t bits = full_ & ~mask; bits != 0; bits &= bits - 1) {
            nodes_.push_back(static_cast<std::size_t>(__builtin_ctzll(bits)));
        }
        nodes_.push_back(m_ + 1);
        const std::size_t k = nodes_.size();
        if (k <= 2) return dist(cur, m_ + 1);
        if (pi_.empty()) pi_.assign(m_ + 2, 0);
        auto wanted = [&](std::size_t i) { return i == 0 || i + 1 == k ? 1 : 2; };

        std::int64_t best = 0;
        std::vector<std::int64_t> key(k);
        std::vector<std::size_t> parent(k);
        std::vector<bool> in_tree(k);
        std::vector<int> degree(k);
        const int rounds = path_.size() <= 1 ? kRootTreeRounds : kTreeRounds;
        for (int round = 0; round < rounds; ++round) {
            auto cost = [&](std::size_t i, std::size_t j) {
                return dist(nodes_[i], nodes_[j]) + pi_[nodes_[i]] + pi_[nodes_[j]];
            };
            std::fill(in_tree.begin(), in_tree.end(), false);
            std::fill(degree.begin(), degree.end(), 0);
            std::fill(key.begin(), key.end(), kInf);
            key[0] = 0;
            std::int64_t total = 0;
            for (std::size_t it = 0; it < k; ++it) {
                std::size_t pick = k;
                for (std::size_t i = 0; i < k; ++i) {
                    if (!in_tree[i] && (pick == k || key[i] < key[pick])) pick = i;
                }
                in_tree[pick] = true;
                total += key[pick];
                if (it > 0) {
                    ++degree[pick];
                    ++degree[parent[pick]];
                }
                for (std::size_t i = 0; i < k; ++i) {
                    if (in_tree[i]) continue;
                    std::int64_t c = cost(pick, i);
                    if (c < key[i]) {
                        key[i] = c;
                        parent[i] = pick;
                    }
                }
            }
            std::int64_t norm = 0;
            for (std::size_t i = 0; i < k; ++i) {
                total -= pi_[nodes_[i]] * wanted(i);
                const std::int64_t gap = degree[i] - wanted(i);
                norm += gap * gap;
            }
            best = std::max(best, total);
            if (best >= target || norm == 0) break;
            // Polyak step towards the target, at least one unit.
            const std::int64_t aim = target >= kInf ? total + 1 : target;
            const std::int64_t step = std::max<std::int64_t>(1, (aim - total) / norm);
            for (std::size_t i = 0; i < k; ++i) pi_[nodes_[i]] += step * (degree[i] - wanted(i));
        }
        return best;
    }

    // Inner vertices of the order have two distinct neighbours, the ends one.
    std::int64_t degree_bound(std::size_t cur, std::uint64_t mask) const {
        const std::uint64_t rem = full_ & ~mask;
        if (rem == 0) return dist(cur, m_ + 1);
        std::int64_t twice = 0;
        auto nearest_two = [&](std::size_t x, bool end) {
            std::int64_t a = kInf;
            std::int64_t b = kInf;
            auto offer_d = [&](std::int64_t d) {
                if (d < a) {
                    b = a;
                    a = d;
                } else if (d < b) {
                    b = d;
                }
            };
            for (std::uint64_t bits = rem; bits != 0; bits &= bits - 1) {
                auto y = static_cast<std::size_t>(__builtin_ctzll(bits));
                if (y != x) offer_d(dist(x, y));
            }
            if (x != cur) offer_d(dist(x, cur));
            if (x != m_ + 1) offer_d(dist(x, m_ + 1));
            return end ? a : a + b;
        };
        for (std::uint64_t bits = rem; bits != 0; bits &= bits - 1) {
            twice += nearest_two(static_cast<std::size_t>(__builtin_ctzll(bits)), false);
        }
        twice += nearest_two(cur, true) + nearest_two(m_ + 1, true);
        return (twice + 1) / 2;
    }

    bool pruned(std::size_t u, std::uint64_t mask, std::int64_t g, std::int64_t limit, bool strict) {
        auto over = [&](std::int64_t total) { return strict ? total >= limit : total > limit; };
        if (over(g + lower_bound(u, mask))) return true;
        if (m_ < kTreeBoundFrom) return false;
        if (over(g + degree_bound(u, mask))) return true;
        std::int64_t target = strict ? limit - g : limit - g + 1;
        return tree_bound(u, mask, target) >= target;
    }

    void tick() {
        if (++expansions_ > budget_) {
            throw SolverCapExceeded("instance too large for exact oracle: search budget of " + std::to_string(budget_) +
                                    " expansions exhausted");
        }
    }

    static std::uint64_t key_hash(std::size_t cur, std::uint64_t mask) {
        return mask * 0x9E3779B97F4A7C15ULL ^ (static_cast<std::uint64_t>(cur) + 0x632BE59BD9B4E019ULL);
    }
    struct Key {
        std::uint64_t mask;
        std::size_t cur;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return static_cast<std::size_t>(key_hash(k.cur, k.mask)); }
    };

    void phase_one(std::size_t cur, std::uint64_t mask, std::int64_t g) {
        tick();
        if (mask == full_) {
            std::int64_t total = g + dist(cur, m_ + 1);
            if (total < best_) {
                best_ = total;
                best_order_.clear();
                for (std::size_t local : path_) best_order_.push_back(closure_index(local));
                best_order_.push_back(p_.destination);
            }
            return;
        }
        auto [it, inserted] = seen_.try_emplace(Key{mask, cur}, g);
        if (!inserted) {
            if (it->second <= g) return;
            it->second = g;
        }
        std::vector<std::pair<std::int64_t, std::size_t>> children;
        for (std::uint64_t bits = full_ & ~mask; bits != 0; bits &= bits - 1) {
            auto u = static_cast<std::size_t>(__builtin_ctzll(bits));
            children.emplace_back(dist(cur, u), u);
        }
        std::sort(children.begin(), children.end());
        for (auto [d, u] : children) {
            std::uint64_t next = mask | (1ULL << u);
            std::int64_t g2 = g + d;
            if (pruned(u, next, g2, best_, true)) continue;
            path_.push_back(u);
            phase_one(u, next, g2);
            path_.pop_back();
        }
    }

    bool phase_two(std::size_t cur, std::uint64_t mask, std::int64_t g, std::int64_t optimum) {
        tick();
        if (mask == full_) return g + dist(cur, m_ + 1) == optimum;
        if (auto it = seen_.find(Key{mask, cur}); it != seen_.end() && it->second <= g) return false;
        for (std::uint64_t bits = full_ & ~mask; bits != 0; bits &= bits - 1) {
            auto u = static_cast<std::size_t>(__builtin_ctzll(bits));
            std::uint64_t next = mask | (1ULL << u);
            std::int64_t g2 = g + dist(cur, u);
            if (pruned(u, next, g2, optimum, false)) continue;
            path_.push_back(u);
            if (phase_two(u, next, g2, optimum)) return true;
            path_.pop_back();
        }
        auto [it, inserted] = seen_.try_emplace(Key{mask, cur}, g);
        if (!inserted) it->second = std::min(it->second, g);
        return false;
    }

    const ScaledDistances& D_;
    const Prepared& p_;
    std::size_t m_;
    std::uint64_t full_ = 0;
    std::uint64_t budget_;
    std::uint64_t expansions_ = 0;
    std::vector<std::vector<std::size_t>> in_;
    std::vector<std::vector<std::size_t>> out_;
    std::unordered_map<Key, std::int64_t, KeyHash> seen_;
    std::vector<std::size_t> path_;  // local ids, starts with origin
    std::vector<std::size_t> nodes_;
    std::vector<std::int64_t> pi_;
    std::int64_t best_ = kInf;
    std::vector<std::size_t> best_order_;
};

// Visit order implied by the first occurrences of required vertices in a hint.
std::vector<std::size_t> hint_order(const Prepared& p, const std::vector<VertexId>& hint) {
    if (hint.empty()) return {};
    std::vector<std::size_t> order{p.origin};
    std::vector<bool> taken(p.closure.size(), false);
    for (VertexId v : hint) {
        auto it = std::lower_bound(p.closure.nodes.begin(), p.closure.nodes.end(), v);
        if (it == p.closure.nodes.end() || *it != v) continue;
        auto ci = static_cast<std::size_t>(it - p.closure.nodes.begin());
        if (ci == p.origin || ci == p.destination || taken[ci]) continue;
        taken[ci] = true;
        order.push_back(ci);
    }
    if (order.size() != p.intermediates.size() + 1) return {};
    order.push_back(p.destination);
    return order;
}

CoverResult materialise(const EstimateGraph& graph, const CoverTask& task, const Prepared& p,
                        const std::vector<std::size_t>& order, const Rational& expected) {
    std::vector<VertexId> vertices{p.closure.nodes[order.front()]};
    for (std::size_t i = 1; i < order.size(); ++i) {
        auto leg = p.closure.expand(order[i - 1], order[i]);
        vertices.insert(vertices.end(), leg.begin() + 1, leg.end());
    }
    CoverResult r;
    r.walk = evaluate_walk(graph, task.weights, std::move(vertices));
    r.cost = r.walk.cost();
    if (r.cost != expected) throw InvariantViolation("expanded walk cost differs from planned cost");
    for (std::size_t ci : order) r.visit_order.push_back(p.closure.nodes[ci]);
    return r;
}

}  // namespace

CoverResult optimal_cover_walk(const EstimateGraph& graph, const CoverTask& task, const SolverLimits& limits) {
    Prepared p = prepare(graph, task);
    const std::size_t m = p.intermediates.size();
    const bool dp_fits = p.closure.size() <= limits.max_required && m < 40 &&
                         ((std::size_t{1} << m) * std::max<std::size_t>(m, 1) * sizeof(std::int64_t)) <= limits.max_dp_bytes;
    if (!dp_fits && (limits.search_budget == 0 || p.closure.size() > kSearchMaxRequired)) {
        throw SolverCapExceeded("instance too large for exact oracle: " + std::to_string(p.closure.size()) +
                                " required vertices, cap " + std::to_string(limits.max_required));
    }
    ScaledDistances D = scale_distances(p.closure);
    Plan plan;
    SolveMethod method = SolveMethod::subset_dp;
    if (dp_fits) {
        plan = held_karp(D, p);
    } else {
        BranchAndBound bnb(D, p, limits.search_budget);
        plan = bnb.solve(hint_order(p, task.hint));
        method = SolveMethod::branch_and_bound;
    }
    CoverResult r = materialise(graph, task, p, plan.order, Rational(plan.cost, D.scale));
    r.method = method;
    r.expansions = plan.expansions;
    return r;
}

CoverResult brute_force_cover(const EstimateGraph& graph, const CoverTask& task) {
    Prepared p = prepare(graph, task);
    if (p.closure.size() > kBruteForceCap) {
        throw SolverCapExceeded("instance too large for brute force: " + std::to_string(p.closure.size()) +
                                " required vertices, cap " + std::to_string(kBruteForceCap));
    }
    std::vector<std::size_t> perm = p.intermediates;
    std::optional<Rational> best;
    std::vector<std::size_t> best_order;
    do {
        Rational c;
        std::size_t cur = p.origin;
        for (std::size_t x : perm) {
            c += p.closure.distance[cur][x];
            cur = x;
        }
        c += p.closure.distance[cur][p.destination];
        if (!best || c < *best) {
            best = c;
            best_order.assign(1, p.origin);
            best_order.insert(best_order.end(), perm.begin(), perm.end());
            best_order.push_back(p.destination);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CoverResult r = materialise(graph, task, p, best_order, *best);
    r.method = SolveMethod::brute_force;
    return r;
}

std::vector<VertexId> KnowledgeView::unvisited() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < graph->vertex_count(); ++v) {
        if (!is_visited(v)) out.push_back(v);
    }
    return out;
}

std::vector<Rational> KnowledgeView::pessimistic_weights() const {
    std::vector<Rational> w;
    w.reserve(revealed.size());
    for (EdgeId e = 0; e < graph->edge_count(); ++e) {
        const auto& r = revealed[static_cast<std::size_t>(e)];
        w.push_back(r ? *r : graph->edge(e).upper);
    }
    return w;
}

CoverResult worst_case_cover_walk(const KnowledgeView& view, VertexId destination, const SolverLimits& limits,
                                  std::vector<VertexId> hint) {
    CoverTask task;
    task.weights = view.pessimistic_weights();
    task.origin = view.position;
    task.destination = destination;
    task.must_visit = view.unvisited();
    task.hint = std::move(hint);
    return optimal_cover_walk(*view.graph, task, limits);
}

}  // namespace geewe
