#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "geewe/graph.hpp"
#include "geewe/knowledge.hpp"

namespace geewe {

/*
 * Limits of the exact covering-walk oracle.
 *
 * Tasks with at most max_required distinct required vertices (origin and
 * destination included) go to the subset DP. Larger tasks go to an exact
 * branch-and-bound that gives up with SolverCapExceeded after search_budget
 * node expansions; search_budget == 0 disables it. Neither path ever returns a
 * non-optimal walk.
 */
struct SolverLimits {
    std::size_t max_required = 20;
    std::size_t max_dp_bytes = std::size_t{1} << 30;
    std::uint64_t search_budget = 4'000'000;
};

inline constexpr std::size_t kBruteForceCap = 10;
inline constexpr std::size_t kSearchMaxRequired = 64;

struct CoverTask {
    std::vector<Rational> weights;  // per edge id, positive
    VertexId origin = kNoVertex;
    VertexId destination = kNoVertex;
    std::vector<VertexId> must_visit;
    // Optional known-feasible visit order; seeds the search incumbent only.
    std::vector<VertexId> hint;
};

enum class SolveMethod { subset_dp, branch_and_bound, brute_force };

const char* to_string(SolveMethod m);

struct CoverResult {
    Walk walk;
    Rational cost;
    // Required vertices (origin first, destination last) in planned order.
    std::vector<VertexId> visit_order;
    SolveMethod method = SolveMethod::subset_dp;
    std::uint64_t expansions = 0;
};

/*
 * Minimum-cost walk from origin to destination containing every vertex of
 * must_visit. Solved as a fixed-endpoint path over the metric closure of the
 * required vertices and expanded back into the graph. Among optimal plans the
 * lexicographically smallest visit order is returned.
 */
CoverResult optimal_cover_walk(const EstimateGraph& graph, const CoverTask& task, const SolverLimits& limits = {});

/// Enumerates every visit order; at most kBruteForceCap required vertices.
CoverResult brute_force_cover(const EstimateGraph& graph, const CoverTask& task);

/*
 * Cheapest walk from the agent position to destination over all unvisited
 * vertices, pricing every unrevealed edge at its upper bound. Its cost bounds
 * what finishing the episode along the walk can cost.
 */
CoverResult worst_case_cover_walk(const KnowledgeView& view, VertexId destination, const SolverLimits& limits = {},
                                  std::vector<VertexId> hint = {});

}  // namespace geewe
