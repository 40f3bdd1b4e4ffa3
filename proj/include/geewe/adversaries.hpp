#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geewe/engine.hpp"

namespace geewe {

// ---- recursive construction ------------------------------------------------

struct RecursiveSpec {
    int k = 2;
    int depth = 0;
    Rational alpha{2};
};

/*
 * A component of depth 0 is a path of k+1 vertices with [1,1] edges. A
 * component of depth i is a chain P, C1, ..., Ck, Q where the Cj have depth
 * i-1 and every pair of neighbouring chain members is joined by all edges
 * between their distinguished vertices, announced [k^i, alpha k^i].
 */
struct RecursiveComponent {
    int depth = 0;
    VertexId first = kNoVertex;   // distinguished vertices
    VertexId second = kNoVertex;
    std::vector<int> children;    // component indices, chain order
    int parent = -1;
    VertexId lo = 0;              // vertices lo..hi-1 belong to the component
    VertexId hi = 0;
};

struct RecursiveInstance {
    RecursiveSpec spec;  // alpha already clamped
    EstimateGraph graph;
    std::vector<RecursiveComponent> components;  // index 0 is the whole graph
    std::vector<int> edge_owner;  // component that introduced each edge
};

/// Clamps alpha to 2; throws InvalidInput for k < 2, depth < 0, alpha < 1.
RecursiveInstance build_recursive(RecursiveSpec spec);

std::int64_t recursive_vertex_count(int k, int depth);
std::int64_t recursive_edge_count(int k, int depth);
Rational recursive_online_bound(int k, int depth, const Rational& alpha);
Rational recursive_offline_cost(int k, int depth);

/*
 * Labels a component's distinguished vertex "start" when the agent reaches
 * it first. Between neighbouring chain members the member touched first
 * decides: its edges leaving from its start are cheap, the others expensive.
 * Singleton chain ends count as their own start.
 */
class RecursiveAdversary final : public WeightSource {
public:
    explicit RecursiveAdversary(const RecursiveInstance& inst);
    std::string name() const override { return "recursive"; }
    Rational reveal(EdgeId edge, VertexId trigger, std::span<const VertexId> visit_order) override;
    Rational complete(EdgeId edge, std::span<const VertexId> visit_order) override;

private:
    void absorb(std::span<const VertexId> visit_order);
    Rational price(EdgeId edge) const;

    const RecursiveInstance& inst_;
    std::size_t seen_ = 0;
    std::vector<std::int64_t> visit_index_;  // per vertex, -1 if unvisited
    std::vector<std::int64_t> touched_;   // per component, first-visit index or -1
    std::vector<VertexId> start_;         // per component
    std::vector<int> leaf_of_;            // innermost component per vertex
};

/// Cheapest walk threading every component between its distinguished vertices.
std::vector<VertexId> recursive_certificate(const RecursiveInstance& inst, const WeightAssignment& w);

// ---- complete and bipartite phase adversaries -------------------------------

/*
 * Phase adversary: every edge revealed while at most `phase` vertices are
 * visited weighs 1. Those first visited vertices form A; later reveals weigh
 * alpha unless they touch A. Unrevealed edges complete by the same rule.
 */
class PhaseAdversary final : public WeightSource {
public:
    PhaseAdversary(const EstimateGraph& graph, int phase, Rational alpha, std::string label);
    std::string name() const override { return label_; }
    Rational reveal(EdgeId edge, VertexId trigger, std::span<const VertexId> visit_order) override;
    Rational complete(EdgeId edge, std::span<const VertexId> visit_order) override;
    int phase() const { return phase_; }

private:
    Rational price(EdgeId edge, std::span<const VertexId> visit_order) const;

    const EstimateGraph& graph_;
    int phase_;
    Rational alpha_;
    std::string label_;
};

struct PhaseInstance {
    EstimateGraph graph;
    int phase = 0;
    Rational alpha{1};
};

/// K_n with intervals [1, alpha], s = 0, t = n-1; phase floor(n/2). n >= 3.
PhaseInstance build_complete_adversary(int n, Rational alpha);

/*
 * Complete bipartite graph, left 0..left-1, right left..left+right-1, all
 * intervals [1, alpha]. For left == right, s = 0 and t = the last right
 * vertex; for left == right+1 both endpoints are on the left (0 and left-1).
 * Phase length right.
 */
PhaseInstance build_bipartite_adversary(int left, int right, Rational alpha);

/// Clamps alpha to 2 for the phase constructions.
Rational clamp_alpha(const Rational& alpha);

// ---- grid trap --------------------------------------------------------------

struct GridSpec {
    int m = 4;
    Rational alpha{3, 2};
};

struct GridTrap {
    GridSpec spec;
    EstimateGraph graph;
    WeightAssignment weights;
    std::vector<VertexId> trap_path;    // all-alpha Hamiltonian path the explorer is led along
    std::vector<VertexId> certificate;  // cheaper covering walk
    Rational adaptive_cost;             // measured by simulation during the build
    Rational certificate_cost;
    int cheap_edges = 0;                // weight-1 edges left after repairs
    int repairs = 0;                    // cheap edges put back to alpha
    std::vector<std::pair<int, int>> cells;  // (row, col) of each vertex
};

/*
 * m x m grid, every edge announced [1, alpha], s and t at the ends of an
 * all-alpha Hamiltonian path along which vertex ids are numbered. Off-path
 * edges weigh 1 where that does not lure the adaptive explorer away from the
 * path; the build simulates the explorer to find out. Throws InvalidInput
 * outside 4 <= m <= 8, 1 <= alpha < 2, and InvariantViolation("trap not
 * effective ...") when the self-check fails.
 */
GridTrap build_grid_trap(GridSpec spec, const SolverLimits& limits = {});

// ---- random instances -------------------------------------------------------

enum class IntervalLaw { uniform, mixed };

struct RandomSpec {
    int n = 6;
    double density = 0.5;   // edge probability
    IntervalLaw law = IntervalLaw::mixed;
    Rational alpha{2};      // uniform: every interval [1, alpha]; mixed: largest ratio used
    std::uint64_t seed = 1;
    bool complete = false;  // ignore density, emit K_n
};

struct RandomInstance {
    EstimateGraph graph;
    WeightAssignment weights;
};

/// Reproducible from the seed alone. Throws InvalidInput if no connected sample is found.
RandomInstance random_instance(const RandomSpec& spec);

/// Actual weights for a fixed graph drawn from each edge's interval.
WeightAssignment random_actuals(const EstimateGraph& graph, std::uint64_t seed);

/// Complete bipartite graph with [1, alpha] intervals, endpoints as in build_bipartite_adversary.
EstimateGraph complete_bipartite(int left, int right, Rational alpha);

}  // namespace geewe
