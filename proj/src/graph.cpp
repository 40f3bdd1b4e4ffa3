#include "geewe/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include "geewe/errors.hpp"

namespace geewe {

namespace {

bool in_range(VertexId v, int n) { return v >= 0 && v < n; }

std::string edge_label(EdgeId e, const Edge& edge) {
    return "edge " + std::to_string(e) + " (" + std::to_string(edge.a) + "," + std::to_string(edge.b) + ")";
}

}  // namespace

EstimateGraph::EstimateGraph(int vertex_count, std::vector<Edge> edges, VertexId start, VertexId end)
    : vertex_count_(vertex_count), edges_(std::move(edges)), start_(start), end_(end) {
    adjacency_.resize(static_cast<std::size_t>(std::max(vertex_count_, 0)));
    for (EdgeId e = 0; e < edge_count(); ++e) {
        const Edge& edge = edges_[static_cast<std::size_t>(e)];
        if (!in_range(edge.a, vertex_count_) || !in_range(edge.b, vertex_count_) || edge.a == edge.b) continue;
        adjacency_[static_cast<std::size_t>(edge.a)].push_back({edge.b, e});
        adjacency_[static_cast<std::size_t>(edge.b)].push_back({edge.a, e});
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end(), [](const Neighbor& x, const Neighbor& y) {
            return x.vertex != y.vertex ? x.vertex < y.vertex : x.edge < y.edge;
        });
    }
}

EstimateGraph EstimateGraph::checked(int vertex_count, std::vector<Edge> edges, VertexId start, VertexId end) {
    EstimateGraph g(vertex_count, std::move(edges), start, end);
    auto problems = validate(g);
    if (!problems.empty()) {
        std::string msg = "invalid instance:";
        for (const auto& p : problems) msg += " " + p + ";";
        throw InvalidInput(msg);
    }
    return g;
}

std::optional<EdgeId> EstimateGraph::edge_between(VertexId a, VertexId b) const {
    if (!in_range(a, vertex_count_) || !in_range(b, vertex_count_)) return std::nullopt;
    auto list = neighbors(a);
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Neighbor& n, VertexId v) { return n.vertex < v; });
    if (it != list.end() && it->vertex == b) return it->edge;
    return std::nullopt;
}

std::vector<Rational> EstimateGraph::lower_bounds() const {
    std::vector<Rational> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back(e.lower);
    return out;
}

std::vector<Rational> EstimateGraph::upper_bounds() const {
    std::vector<Rational> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.push_back(e.upper);
    return out;
}

std::vector<std::string> validate(const EstimateGraph& graph) {
    std::vector<std::string> problems;
    const int n = graph.vertex_count();
    if (n <= 0) {
        problems.emplace_back("vertex count must be positive");
        return problems;
    }
    if (!in_range(graph.start(), n)) problems.emplace_back("start vertex out of range");
    if (!in_range(graph.end(), n)) problems.emplace_back("end vertex out of range");
    if (graph.start() == graph.end()) problems.emplace_back("start equals end");

    std::set<std::pair<VertexId, VertexId>> seen;
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const Edge& edge = graph.edge(e);
        if (!in_range(edge.a, n) || !in_range(edge.b, n)) {
            problems.push_back(edge_label(e, edge) + ": vertex id out of range");
            continue;
        }
        if (edge.a == edge.b) {
            problems.push_back(edge_label(e, edge) + ": self-loop");
            continue;
        }
        auto key = std::minmax(edge.a, edge.b);
        if (!seen.insert(key).second) problems.push_back(edge_label(e, edge) + ": duplicate edge");
        if (edge.lower <= Rational(0)) problems.push_back(edge_label(e, edge) + ": nonpositive lower bound");
        if (edge.upper < edge.lower) problems.push_back(edge_label(e, edge) + ": interval inverted");
    }

    std::vector<bool> reached(static_cast<std::size_t>(n), false);
    std::queue<VertexId> frontier;
    reached[0] = true;
    frontier.push(0);
    int count = 1;
    while (!frontier.empty()) {
        VertexId v = frontier.front();
        frontier.pop();
        for (const auto& nb : graph.neighbors(v)) {
            if (!reached[static_cast<std::size_t>(nb.vertex)]) {
                reached[static_cast<std::size_t>(nb.vertex)] = true;
                ++count;
                frontier.push(nb.vertex);
            }
        }
    }
    if (count != n) problems.emplace_back("disconnected");
    return problems;
}

AlphaProfile alpha_of(const EstimateGraph& graph) {
    AlphaProfile profile;
    for (const auto& e : graph.edges()) profile.alpha = max(profile.alpha, e.upper / e.lower);
    profile.uniform = std::all_of(graph.edges().begin(), graph.edges().end(), [&](const Edge& e) {
        return e.lower == Rational(1) && e.upper == profile.alpha;
    });
    return profile;
}

std::vector<std::string> check_assignment(const EstimateGraph& graph, const WeightAssignment& w) {
    std::vector<std::string> problems;
    if (w.weights.size() != graph.edges().size()) {
        problems.push_back("assignment has " + std::to_string(w.weights.size()) + " weights for " +
                           std::to_string(graph.edge_count()) + " edges");
        return problems;
    }
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        const Edge& edge = graph.edge(e);
        if (w[e] < edge.lower || w[e] > edge.upper) {
            problems.push_back(edge_label(e, edge) + ": weight " + w[e].str() + " outside [" + edge.lower.str() + ", " +
                               edge.upper.str() + "]");
        }
    }
    return problems;
}

Rational Walk::cost() const {
    Rational total;
    for (const auto& c : step_costs) total += c;
    return total;
}

Walk evaluate_walk(const EstimateGraph& graph, std::span<const Rational> weights, std::vector<VertexId> vertices) {
    Walk walk;
    walk.vertices = std::move(vertices);
    for (std::size_t i = 1; i < walk.vertices.size(); ++i) {
        auto e = graph.edge_between(walk.vertices[i - 1], walk.vertices[i]);
        if (!e) {
            throw InvalidInput("walk step " + std::to_string(walk.vertices[i - 1]) + "->" +
                               std::to_string(walk.vertices[i]) + " is not an edge");
        }
        walk.step_costs.push_back(weights[static_cast<std::size_t>(*e)]);
    }
    return walk;
}

std::vector<std::string> walk_violations(const EstimateGraph& graph, std::span<const Rational> weights, const Walk& walk) {
    std::vector<std::string> problems;
    if (walk.vertices.empty()) {
        problems.emplace_back("empty walk");
        return problems;
    }
    if (walk.step_costs.size() + 1 != walk.vertices.size()) problems.emplace_back("step cost count mismatch");
    for (std::size_t i = 1; i < walk.vertices.size(); ++i) {
        auto e = graph.edge_between(walk.vertices[i - 1], walk.vertices[i]);
        if (!e) {
            problems.push_back("step " + std::to_string(i) + " not adjacent");
        } else if (i - 1 < walk.step_costs.size() && walk.step_costs[i - 1] != weights[static_cast<std::size_t>(*e)]) {
            problems.push_back("step " + std::to_string(i) + " cost mismatch");
        }
    }
    return problems;
}

bool walk_covers(const Walk& walk, VertexId origin, VertexId destination, std::span<const VertexId> required) {
    if (walk.vertices.empty() || walk.vertices.front() != origin || walk.vertices.back() != destination) return false;
    std::set<VertexId> seen(walk.vertices.begin(), walk.vertices.end());
    return std::all_of(required.begin(), required.end(), [&](VertexId v) { return seen.count(v) > 0; });
}

std::vector<VertexId> ShortestPaths::path_to(VertexId target) const {
    if (!distance.at(static_cast<std::size_t>(target))) throw std::invalid_argument("target unreachable");
    std::vector<VertexId> path;
    for (VertexId v = target; v != kNoVertex; v = predecessor[static_cast<std::size_t>(v)]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

ShortestPaths shortest_paths(const EstimateGraph& graph, std::span<const Rational> weights, VertexId from) {
    if (weights.size() != graph.edges().size()) throw std::invalid_argument("weights must cover every edge");
    for (const auto& w : weights) {
        if (w <= Rational(0)) throw std::invalid_argument("nonpositive edge weight");
    }
    const auto n = static_cast<std::size_t>(graph.vertex_count());
    ShortestPaths sp;
    sp.source = from;
    sp.distance.assign(n, std::nullopt);
    sp.predecessor.assign(n, kNoVertex);
    std::vector<bool> done(n, false);

    // Ordered by (distance, vertex id) so extraction is deterministic.
    std::set<std::pair<Rational, VertexId>> queue;
    sp.distance[static_cast<std::size_t>(from)] = Rational(0);
    queue.emplace(Rational(0), from);
    while (!queue.empty()) {
        auto [d, u] = *queue.begin();
        queue.erase(queue.begin());
        done[static_cast<std::size_t>(u)] = true;
        for (const auto& nb : graph.neighbors(u)) {
            auto v = static_cast<std::size_t>(nb.vertex);
            if (done[v]) continue;
            Rational candidate = d + weights[static_cast<std::size_t>(nb.edge)];
            auto& current = sp.distance[v];
            if (!current || candidate < *current) {
                if (current) queue.erase({*current, nb.vertex});
                current = candidate;
                sp.predecessor[v] = u;
                queue.emplace(candidate, nb.vertex);
            } else if (candidate == *current && u < sp.predecessor[v]) {
                sp.predecessor[v] = u;
            }
        }
    }
    return sp;
}

std::size_t MetricClosure::index_of(VertexId v) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.end() || *it != v) throw std::out_of_range("vertex not in closure");
    return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<VertexId> MetricClosure::expand(std::size_t i, std::size_t j) const {
    return trees.at(i).path_to(nodes.at(j));
}

MetricClosure metric_closure(const EstimateGraph& graph, std::span<const Rational> weights, std::vector<VertexId> required) {
    std::sort(required.begin(), required.end());
    required.erase(std::unique(required.begin(), required.end()), required.end());
    MetricClosure mc;
    mc.nodes = std::move(required);
    const std::size_t k = mc.nodes.size();
    mc.distance.assign(k, std::vector<Rational>(k));
    mc.trees.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        mc.trees.push_back(shortest_paths(graph, weights, mc.nodes[i]));
        for (std::size_t j = 0; j < k; ++j) {
            const auto& d = mc.trees[i].distance[static_cast<std::size_t>(mc.nodes[j])];
            if (!d) throw std::invalid_argument("required vertices are not connected");
            mc.distance[i][j] = *d;
        }
    }
    return mc;
}

}  // namespace geewe
