#include "geewe/explorers.hpp"

#include <numeric>

#include "geewe/errors.hpp"

namespace geewe {

VertexId PrecomputeExplorer::decide(const KnowledgeView& view) {
    const EstimateGraph& g = *view.graph;
    if (plan_.empty()) {
        std::vector<VertexId> all(static_cast<std::size_t>(g.vertex_count()));
        std::iota(all.begin(), all.end(), 0);
        CoverTask task{g.lower_bounds(), g.start(), g.end(), std::move(all), {}};
        plan_ = optimal_cover_walk(g, task, limits_).walk.vertices;
        cursor_ = 0;
    }
    if (cursor_ + 1 >= plan_.size() || plan_[cursor_] != view.position) {
        throw InvariantViolation("precompute explorer lost track of its plan");
    }
    return plan_[++cursor_];
}

VertexId AdaptiveExplorer::decide(const KnowledgeView& view) {
    std::vector<VertexId> hint;
    if (!plans_.empty()) {
        const auto& prev = plans_.back().walk;
        if (prev.size() >= 2 && prev[1] == view.position) hint.assign(prev.begin() + 1, prev.end());
    }
    CoverResult r = worst_case_cover_walk(view, view.graph->end(), limits_, std::move(hint));
    if (r.walk.vertices.size() < 2) throw InvariantViolation("adaptive explorer asked to move after finishing");
    plans_.push_back({view.position, view.paid, r.cost, r.walk.vertices});
    return r.walk.vertices[1];
}

VertexId NearestNeighborExplorer::decide(const KnowledgeView& view) {
    const EstimateGraph& g = *view.graph;
    const auto weights = view.pessimistic_weights();
    ShortestPaths sp = shortest_paths(g, weights, view.position);
    VertexId target = kNoVertex;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (view.is_visited(v) || v == g.end() || !sp.distance[static_cast<std::size_t>(v)]) continue;
        if (target == kNoVertex || *sp.distance[static_cast<std::size_t>(v)] < *sp.distance[static_cast<std::size_t>(target)]) {
            target = v;
        }
    }
    if (target == kNoVertex) target = g.end();
    if (target == view.position) throw InvariantViolation("nearest neighbor explorer asked to move after finishing");
    return sp.path_to(target).at(1);
}

const std::vector<std::string>& explorer_names() {
    static const std::vector<std::string> names{"precompute", "adaptive", "nn"};
    return names;
}

std::unique_ptr<Explorer> make_explorer(const std::string& name, const SolverLimits& limits) {
    if (name == "precompute") return std::make_unique<PrecomputeExplorer>(limits);
    if (name == "adaptive") return std::make_unique<AdaptiveExplorer>(limits);
    if (name == "nn") return std::make_unique<NearestNeighborExplorer>();
    throw InvalidInput("unknown explorer '" + name + "' (expected precompute, adaptive or nn)");
}

}  // namespace geewe
