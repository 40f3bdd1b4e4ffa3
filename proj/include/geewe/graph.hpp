#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "geewe/rational.hpp"

namespace geewe {

using VertexId = int;
using EdgeId = int;

inline constexpr VertexId kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

// Undirected edge with its announced weight interval [lower, upper].
struct Edge {
    VertexId a = 0;
    VertexId b = 0;
    Rational lower{1};
    Rational upper{1};

    VertexId other(VertexId v) const { return v == a ? b : a; }
    bool touches(VertexId v) const { return a == v || b == v; }
};

struct Neighbor {
    VertexId vertex;
    EdgeId edge;
};

/*
 * Graph structure plus announced intervals, start s and end t.
 *
 * Construction never throws on invariant violations so that validate() can
 * report them; use checked() to obtain an instance that is known to be legal.
 * Immutable afterwards.
 */
class EstimateGraph {
public:
    EstimateGraph() = default;
    EstimateGraph(int vertex_count, std::vector<Edge> edges, VertexId start, VertexId end);

    /// Builds the graph and throws InvalidInput listing every violation.
    static EstimateGraph checked(int vertex_count, std::vector<Edge> edges, VertexId start, VertexId end);

    int vertex_count() const { return vertex_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    VertexId start() const { return start_; }
    VertexId end() const { return end_; }

    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Neighbours sorted by vertex id.
    std::span<const Neighbor> neighbors(VertexId v) const { return adjacency_.at(static_cast<std::size_t>(v)); }

    std::optional<EdgeId> edge_between(VertexId a, VertexId b) const;
    bool adjacent(VertexId a, VertexId b) const { return edge_between(a, b).has_value(); }

    std::vector<Rational> lower_bounds() const;
    std::vector<Rational> upper_bounds() const;

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    VertexId start_ = 0;
    VertexId end_ = 0;
    std::vector<std::vector<Neighbor>> adjacency_;
};

/// Every violated structural invariant, empty iff the graph is a legal instance.
std::vector<std::string> validate(const EstimateGraph& graph);

struct AlphaProfile {
    Rational alpha{1};
    bool uniform = false;  // every interval is exactly [1, alpha]
};

AlphaProfile alpha_of(const EstimateGraph& graph);

/// Actual weight per edge id.
struct WeightAssignment {
    std::vector<Rational> weights;

    const Rational& operator[](EdgeId e) const { return weights.at(static_cast<std::size_t>(e)); }
    std::span<const Rational> view() const { return weights; }
};

/// Violations of totality and interval containment.
std::vector<std::string> check_assignment(const EstimateGraph& graph, const WeightAssignment& w);

/*
 * Vertex sequence with the cost paid for every step. A single vertex is a
 * valid (empty) walk.
 */
struct Walk {
    std::vector<VertexId> vertices;
    std::vector<Rational> step_costs;

    Rational cost() const;
    std::size_t steps() const { return step_costs.size(); }
};

/// Prices a vertex sequence; throws InvalidInput on non-adjacent consecutive vertices.
Walk evaluate_walk(const EstimateGraph& graph, std::span<const Rational> weights, std::vector<VertexId> vertices);

/// Violations of the Walk invariants under the given weights.
std::vector<std::string> walk_violations(const EstimateGraph& graph, std::span<const Rational> weights, const Walk& walk);

/// True if the walk starts at origin, ends at destination and contains every required vertex.
bool walk_covers(const Walk& walk, VertexId origin, VertexId destination, std::span<const VertexId> required);

struct ShortestPaths {
    VertexId source = kNoVertex;
    std::vector<std::optional<Rational>> distance;
    std::vector<VertexId> predecessor;

    /// Vertex sequence source..target along the predecessor tree.
    std::vector<VertexId> path_to(VertexId target) const;
};

/*
 * Exact single-source shortest paths. Among equally short routes the
 * predecessor with the smaller vertex id wins. Throws std::invalid_argument
 * on a nonpositive weight.
 */
ShortestPaths shortest_paths(const EstimateGraph& graph, std::span<const Rational> weights, VertexId from);

/// Complete distance matrix over a vertex subset plus the walks realising it.
struct MetricClosure {
    std::vector<VertexId> nodes;  // sorted, unique
    std::vector<std::vector<Rational>> distance;
    std::vector<ShortestPaths> trees;  // one per node, rooted there

    std::size_t size() const { return nodes.size(); }
    std::size_t index_of(VertexId v) const;
    /// Original-graph walk from nodes[i] to nodes[j], endpoints included.
    std::vector<VertexId> expand(std::size_t i, std::size_t j) const;
};

MetricClosure metric_closure(const EstimateGraph& graph, std::span<const Rational> weights, std::vector<VertexId> required);

}  // namespace geewe
