#pragma once

#include <optional>
#include <vector>

#include "geewe/graph.hpp"

namespace geewe {

/*
 * Everything an explorer may look at: the announced instance, the vertices
 * visited so far, the weights revealed by those visits, the agent position
 * and the money spent. Actual weights of unrevealed edges are not reachable
 * from here.
 */
struct KnowledgeView {
    const EstimateGraph* graph = nullptr;
    VertexId position = kNoVertex;
    std::vector<bool> visited;
    std::vector<VertexId> visit_order;  // first-visit order, starts with s
    std::vector<std::optional<Rational>> revealed;  // per edge id
    std::vector<VertexId> history;  // every position occupied, starts with s
    Rational paid;

    bool is_visited(VertexId v) const { return visited[static_cast<std::size_t>(v)]; }
    bool all_visited() const { return static_cast<int>(visit_order.size()) == graph->vertex_count(); }
    bool finished() const { return all_visited() && position == graph->end(); }

    std::vector<VertexId> unvisited() const;
    /// Revealed weight where known, announced upper bound otherwise.
    std::vector<Rational> pessimistic_weights() const;
};

}  // namespace geewe
