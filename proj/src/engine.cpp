#include "geewe/engine.hpp"

#include <numeric>
#include <ostream>

#include "geewe/errors.hpp"

namespace geewe {

const char* to_string(OfflineKind k) {
    switch (k) {
        case OfflineKind::exact: return "exact";
        case OfflineKind::certificate: return "certificate";
        case OfflineKind::none: return "none";
    }
    return "?";
}

Episode::Episode(const EstimateGraph& graph, WeightSource& source, std::ostream* trace)
    : graph_(graph), source_(source), trace_(trace) {
    view_.graph = &graph_;
    view_.visited.assign(static_cast<std::size_t>(graph_.vertex_count()), false);
    view_.revealed.assign(static_cast<std::size_t>(graph_.edge_count()), std::nullopt);
    view_.position = graph_.start();
    view_.history.push_back(graph_.start());
    visit(graph_.start());
}

void Episode::visit(VertexId v) {
    view_.visited[static_cast<std::size_t>(v)] = true;
    view_.visit_order.push_back(v);
    for (const auto& nb : graph_.neighbors(v)) {
        auto& slot = view_.revealed[static_cast<std::size_t>(nb.edge)];
        if (slot) continue;
        Rational w = source_.reveal(nb.edge, v, view_.visit_order);
        const Edge& e = graph_.edge(nb.edge);
        if (w < e.lower || w > e.upper) {
            throw AdversaryFault(source_.name() + " revealed " + w.str() + " for edge " + std::to_string(nb.edge) +
                                 " announced [" + e.lower.str() + ", " + e.upper.str() + "]");
        }
        slot = w;
        reveals_.push_back({nb.edge, w, v, false});
        if (trace_) *trace_ << "reveal edge " << nb.edge << " (" << e.a << "," << e.b << ") = " << w << " at " << v << '\n';
    }
}

void Episode::move(VertexId to) {
    const VertexId from = view_.position;
    auto edge = graph_.edge_between(from, to);
    if (!edge) throw IllegalMove("move " + std::to_string(from) + "->" + std::to_string(to) + " is not along an edge");
    const auto& w = view_.revealed[static_cast<std::size_t>(*edge)];
    if (!w) throw InvariantViolation("edge at the agent position is unrevealed");
    view_.paid += *w;
    view_.position = to;
    view_.history.push_back(to);
    moves_.push_back({from, to, *edge, *w});
    if (trace_) *trace_ << "move " << from << " -> " << to << " pays " << *w << " total " << view_.paid << '\n';
    if (!view_.is_visited(to)) visit(to);
}

WeightAssignment Episode::realized_assignment() {
    WeightAssignment out;
    out.weights.reserve(view_.revealed.size());
    for (EdgeId e = 0; e < graph_.edge_count(); ++e) {
        auto& slot = view_.revealed[static_cast<std::size_t>(e)];
        if (slot) {
            out.weights.push_back(*slot);
            continue;
        }
        // Only reachable for aborted or partial episodes. The view keeps
        // these unrevealed; they are recorded separately as post-hoc.
        Rational w = source_.complete(e, view_.visit_order);
        const Edge& edge = graph_.edge(e);
        if (w < edge.lower || w > edge.upper) {
            throw AdversaryFault(source_.name() + " completed edge " + std::to_string(e) + " outside its interval");
        }
        reveals_.push_back({e, w, kNoVertex, true});
        out.weights.push_back(w);
    }
    return out;
}

std::vector<std::string> Episode::check_reveal_invariants() const {
    std::vector<std::string> problems;
    for (EdgeId e = 0; e < graph_.edge_count(); ++e) {
        const Edge& edge = graph_.edge(e);
        bool touches_visited = view_.is_visited(edge.a) || view_.is_visited(edge.b);
        const auto& w = view_.revealed[static_cast<std::size_t>(e)];
        if (touches_visited != w.has_value()) problems.push_back("reveal set mismatch on edge " + std::to_string(e));
        if (w && (*w < edge.lower || *w > edge.upper)) problems.push_back("revealed weight outside interval on edge " + std::to_string(e));
    }
    if (!view_.is_visited(graph_.start())) problems.emplace_back("start not visited");
    if (!view_.is_visited(view_.position)) problems.emplace_back("position not visited");
    Rational paid;
    for (const auto& m : moves_) paid += m.weight;
    if (paid != view_.paid) problems.emplace_back("paid differs from the sum of moves");
    return problems;
}

namespace {

void fill_offline(RunReport& report, const EstimateGraph& graph, const RunOptions& options) {
    std::vector<VertexId> all(static_cast<std::size_t>(graph.vertex_count()));
    std::iota(all.begin(), all.end(), 0);
    CoverTask task{report.realized.weights, graph.start(), graph.end(), all, report.online_walk};
    try {
        auto best = optimal_cover_walk(graph, task, options.limits);
        report.offline_cost = best.cost;
        report.offline_walk = best.walk.vertices;
        report.offline_kind = OfflineKind::exact;
        return;
    } catch (const SolverCapExceeded& ex) {
        report.offline_note = ex.what();
    }

    auto consider = [&](const std::vector<VertexId>& vertices) {
        Walk w = evaluate_walk(graph, report.realized.weights, vertices);
        if (!walk_covers(w, graph.start(), graph.end(), all)) throw InvariantViolation("certificate walk does not cover the graph");
        if (!report.offline_cost || w.cost() < *report.offline_cost) {
            report.offline_cost = w.cost();
            report.offline_walk = w.vertices;
            report.offline_kind = OfflineKind::certificate;
        }
    };
    if (options.certificate) {
        if (auto cert = options.certificate(report.realized)) consider(*cert);
    }
    try {
        CoverTask lower{graph.lower_bounds(), graph.start(), graph.end(), all, {}};
        consider(optimal_cover_walk(graph, lower, options.limits).walk.vertices);
    } catch (const SolverCapExceeded&) {
    }
}

}  // namespace

RunReport run_episode(const EstimateGraph& graph, WeightSource& source, Explorer& explorer, const RunOptions& options) {
    Episode episode(graph, source, options.trace);
    const std::size_t n = static_cast<std::size_t>(graph.vertex_count());
    const std::size_t step_cap = 10 * n * n;
    std::size_t steps = 0;
    while (!episode.view().finished()) {
        if (steps >= step_cap) {
            throw NonTermination(explorer.name() + " did not finish within " + std::to_string(step_cap) + " steps");
        }
        VertexId next = explorer.decide(episode.view());
        episode.move(next);
        ++steps;
        if (options.check_invariants) {
            auto problems = episode.check_reveal_invariants();
            if (!problems.empty()) throw InvariantViolation("engine invariant: " + problems.front());
        }
    }

    RunReport report;
    report.instance = options.instance;
    report.explorer = explorer.name();
    report.source = source.name();
    report.moves = episode.moves();
    report.online_walk = episode.view().history;
    report.online_cost = episode.view().paid;
    report.steps = steps;
    report.realized = episode.realized_assignment();
    report.reveals = episode.reveals();
    if (options.compute_offline) {
        fill_offline(report, graph, options);
        if (report.offline_cost) report.ratio = report.online_cost / *report.offline_cost;
    }
    return report;
}

nlohmann::json report_to_json(const RunReport& r) {
    using nlohmann::json;
    json moves = json::array();
    for (const auto& m : r.moves) moves.push_back({{"from", m.from}, {"to", m.to}, {"edge", m.edge}, {"weight", m.weight.str()}});
    json reveals = json::array();
    for (const auto& v : r.reveals) {
        json item{{"edge", v.edge}, {"weight", v.weight.str()}, {"post_hoc", v.post_hoc}};
        item["trigger"] = v.trigger == kNoVertex ? json(nullptr) : json(v.trigger);
        reveals.push_back(std::move(item));
    }
    json out{{"instance", r.instance},
             {"explorer", r.explorer},
             {"source", r.source},
             {"steps", r.steps},
             {"online_cost", r.online_cost.str()},
             {"online_walk", r.online_walk},
             {"offline_kind", to_string(r.offline_kind)},
             {"moves", std::move(moves)},
             {"reveals", std::move(reveals)}};
    out["offline_cost"] = r.offline_cost ? json(r.offline_cost->str()) : json(nullptr);
    out["offline_walk"] = r.offline_walk;
    if (r.ratio) {
        out["ratio"] = r.ratio->str();
        out["ratio_decimal"] = r.ratio->decimal(6);
        out["ratio_is_lower_bound"] = r.offline_kind != OfflineKind::exact;
    } else {
        out["ratio"] = nullptr;
    }
    if (!r.offline_note.empty()) out["offline_note"] = r.offline_note;
    return out;
}

}  // namespace geewe
