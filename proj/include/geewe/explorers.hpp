#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geewe/engine.hpp"

namespace geewe {

/*
 * Plans once on the lower bounds and replays the plan, whatever gets
 * revealed on the way. Equal-cost plans resolve to the lexicographically
 * smallest visit order.
 */
class PrecomputeExplorer final : public Explorer {
public:
    explicit PrecomputeExplorer(SolverLimits limits = {}) : limits_(limits) {}
    std::string name() const override { return "precompute"; }
    VertexId decide(const KnowledgeView& view) override;

    /// The replayed walk, empty before the first decision.
    const std::vector<VertexId>& plan() const { return plan_; }

private:
    SolverLimits limits_;
    std::vector<VertexId> plan_;
    std::size_t cursor_ = 0;
};

struct PlanRecord {
    VertexId position;
    Rational paid;       // spent before this decision
    Rational estimate;   // pessimistic cost of the remaining plan
    std::vector<VertexId> walk;
};

/*
 * Recomputes the worst-case covering walk to t at every step and takes its
 * first edge. The previous plan only seeds the exact search as an incumbent,
 * so decisions are identical to a cold recomputation.
 */
class AdaptiveExplorer final : public Explorer {
public:
    explicit AdaptiveExplorer(SolverLimits limits = {}) : limits_(limits) {}
    std::string name() const override { return "adaptive"; }
    VertexId decide(const KnowledgeView& view) override;

    const std::vector<PlanRecord>& plans() const { return plans_; }

private:
    SolverLimits limits_;
    std::vector<PlanRecord> plans_;
};

/*
 * Heads for the unvisited vertex other than t that is closest under known
 * weights (upper bounds where unrevealed), smaller id on ties; t goes last.
 */
class NearestNeighborExplorer final : public Explorer {
public:
    std::string name() const override { return "nn"; }
    VertexId decide(const KnowledgeView& view) override;
};

/// "precompute", "adaptive" or "nn"; throws InvalidInput otherwise.
std::unique_ptr<Explorer> make_explorer(const std::string& name, const SolverLimits& limits = {});

const std::vector<std::string>& explorer_names();

}  // namespace geewe
