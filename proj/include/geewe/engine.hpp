#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "geewe/graph.hpp"
#include "geewe/knowledge.hpp"
#include "geewe/solver.hpp"

namespace geewe {

/*
 * Where actual weights come from. The engine asks for each edge exactly once,
 * at the moment its first endpoint is visited, and checks the answer against
 * the announced interval. visit_order lists the visited vertices in
 * first-visit order and ends with the vertex that triggered the reveal.
 */
class WeightSource {
public:
    virtual ~WeightSource() = default;
    virtual std::string name() const = 0;
    virtual Rational reveal(EdgeId edge, VertexId trigger, std::span<const VertexId> visit_order) = 0;
    /// Weight for an edge the episode never revealed (offline bookkeeping only).
    virtual Rational complete(EdgeId edge, std::span<const VertexId> visit_order) = 0;
};

class FixedAssignment final : public WeightSource {
public:
    explicit FixedAssignment(WeightAssignment weights) : weights_(std::move(weights)) {}
    std::string name() const override { return "fixed"; }
    Rational reveal(EdgeId edge, VertexId, std::span<const VertexId>) override { return weights_[edge]; }
    Rational complete(EdgeId edge, std::span<const VertexId>) override { return weights_[edge]; }

private:
    WeightAssignment weights_;
};

/// Online policy: looks at the knowledge view and names the next adjacent vertex.
class Explorer {
public:
    virtual ~Explorer() = default;
    virtual std::string name() const = 0;
    virtual VertexId decide(const KnowledgeView& view) = 0;
};

struct MoveRecord {
    VertexId from;
    VertexId to;
    EdgeId edge;
    Rational weight;
};

struct RevealRecord {
    EdgeId edge;
    Rational weight;
    VertexId trigger;  // kNoVertex for post-hoc completions
    bool post_hoc = false;
};

/*
 * One GEEWE episode. Construction places the agent on s and reveals the
 * edges around it; move() walks one edge. The weight source is private to
 * the episode, explorers only ever get view().
 */
class Episode {
public:
    Episode(const EstimateGraph& graph, WeightSource& source, std::ostream* trace = nullptr);

    const KnowledgeView& view() const { return view_; }
    const std::vector<MoveRecord>& moves() const { return moves_; }
    const std::vector<RevealRecord>& reveals() const { return reveals_; }

    /// Throws IllegalMove unless `to` is adjacent to the current position.
    void move(VertexId to);

    /// Revealed weights plus post-hoc completions for anything never revealed.
    WeightAssignment realized_assignment();

    /// Revealed domain equals the edges touching a visited vertex.
    std::vector<std::string> check_reveal_invariants() const;

private:
    void visit(VertexId v);

    const EstimateGraph& graph_;
    WeightSource& source_;
    std::ostream* trace_;
    KnowledgeView view_;
    std::vector<MoveRecord> moves_;
    std::vector<RevealRecord> reveals_;
};

enum class OfflineKind { exact, certificate, none };

const char* to_string(OfflineKind k);

struct RunReport {
    std::string instance;
    std::string explorer;
    std::string source;
    std::vector<MoveRecord> moves;
    std::vector<RevealRecord> reveals;
    std::vector<VertexId> online_walk;
    Rational online_cost;
    std::optional<Rational> offline_cost;
    OfflineKind offline_kind = OfflineKind::none;
    std::vector<VertexId> offline_walk;
    // online/offline; only a lower bound on the true ratio unless offline is exact
    std::optional<Rational> ratio;
    std::size_t steps = 0;
    WeightAssignment realized;
    std::string offline_note;
};

nlohmann::json report_to_json(const RunReport& report);

/// Supplies an explicitly constructed offline walk for the realized weights.
using CertificateFn = std::function<std::optional<std::vector<VertexId>>(const WeightAssignment&)>;

struct RunOptions {
    std::string instance = "instance";
    SolverLimits limits;
    bool compute_offline = true;
    bool check_invariants = true;
    CertificateFn certificate;
    std::ostream* trace = nullptr;
};

/*
 * Drives the explorer until every vertex is visited and the agent stands on
 * t, then prices the offline optimum on the realized weights. Falls back to
 * the certificate walk (flagged) when the exact oracle refuses. Stops with
 * NonTermination after 10*n*n steps.
 */
RunReport run_episode(const EstimateGraph& graph, WeightSource& source, Explorer& explorer, const RunOptions& options = {});

}  // namespace geewe
