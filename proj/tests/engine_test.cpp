#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "geewe/adversaries.hpp"
#include "geewe/engine.hpp"
#include "geewe/errors.hpp"
#include "geewe/explorers.hpp"
#include "helpers.hpp"

using namespace geewe;
using namespace geewe::testing;

namespace {

// Fixed weights that remembers every question it was asked.
class RecordingSource final : public WeightSource {
public:
    explicit RecordingSource(std::vector<Rational> w) : w_(std::move(w)) {}
    std::string name() const override { return "recording"; }
    Rational reveal(EdgeId e, VertexId trigger, std::span<const VertexId> order) override {
        asked.push_back({e, trigger, std::vector<VertexId>(order.begin(), order.end())});
        return w_[static_cast<std::size_t>(e)];
    }
    Rational complete(EdgeId e, std::span<const VertexId>) override {
        completed.push_back(e);
        return w_[static_cast<std::size_t>(e)];
    }
    struct Ask {
        EdgeId edge;
        VertexId trigger;
        std::vector<VertexId> order;
    };
    std::vector<Ask> asked;
    std::vector<EdgeId> completed;

private:
    std::vector<Rational> w_;
};

class ConstantSource final : public WeightSource {
public:
    explicit ConstantSource(Rational w) : w_(std::move(w)) {}
    std::string name() const override { return "constant"; }
    Rational reveal(EdgeId, VertexId, std::span<const VertexId>) override { return w_; }
    Rational complete(EdgeId, std::span<const VertexId>) override { return w_; }

private:
    Rational w_;
};

// Walks a scripted vertex list and then stays put by bouncing.
class ScriptedExplorer final : public Explorer {
public:
    explicit ScriptedExplorer(std::vector<VertexId> script) : script_(std::move(script)) {}
    std::string name() const override { return "scripted"; }
    VertexId decide(const KnowledgeView&) override { return script_.at(next_++ % script_.size()); }

private:
    std::vector<VertexId> script_;
    std::size_t next_ = 0;
};

// Looks at the view like any explorer would and checks what leaks into it.
class PeekingExplorer final : public Explorer {
public:
    explicit PeekingExplorer(std::vector<std::string>* problems) : problems_(problems) {}
    std::string name() const override { return "peeking"; }
    VertexId decide(const KnowledgeView& view) override {
        const auto& g = *view.graph;
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            bool touches = view.is_visited(g.edge(e).a) || view.is_visited(g.edge(e).b);
            if (view.revealed[static_cast<std::size_t>(e)].has_value() != touches) problems_->push_back("leak on edge " + std::to_string(e));
        }
        return inner_.decide(view);
    }

private:
    std::vector<std::string>* problems_;
    NearestNeighborExplorer inner_;
};

}  // namespace

TEST_CASE("two-vertex path: one move at the actual weight") {
    auto g = path_graph(2, 1, 2);
    FixedAssignment src(WeightAssignment{{R(3, 2)}});
    AdaptiveExplorer ex;
    auto rep = run_episode(g, src, ex);
    CHECK(rep.online_cost == R(3, 2));
    CHECK(rep.online_walk == std::vector<VertexId>{0, 1});
    CHECK(rep.offline_cost == R(3, 2));
    CHECK(rep.offline_kind == OfflineKind::exact);
    CHECK(rep.ratio == R(1));
    REQUIRE(rep.reveals.size() == 1);
    CHECK(rep.reveals[0].trigger == 0);
}

TEST_CASE("three-vertex path reveals the second edge on arrival") {
    auto g = path_graph(3, 1, 2);
    RecordingSource src({R(1), R(2)});
    Episode ep(g, src);
    CHECK(src.asked.size() == 1);
    CHECK(ep.view().revealed[1] == std::nullopt);
    ep.move(1);
    REQUIRE(src.asked.size() == 2);
    CHECK(src.asked[1].edge == 1);
    CHECK(src.asked[1].trigger == 1);
    CHECK(src.asked[1].order == std::vector<VertexId>{0, 1});
    ep.move(2);
    CHECK(ep.view().finished());
    CHECK(ep.view().paid == R(3));
}

TEST_CASE("K4 with unit weights costs three for every explorer") {
    auto g = complete_graph(4, 1, 2, 0, 3);
    for (const auto& name : explorer_names()) {
        ConstantSource src(R(1));
        auto ex = make_explorer(name);
        auto rep = run_episode(g, src, *ex);
        CHECK(rep.online_cost == R(3));
        CHECK(rep.offline_cost == R(3));
    }
}

TEST_CASE("each edge is asked exactly once, at its first touched endpoint") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 40; ++round) {
        int n = std::uniform_int_distribution<int>(3, 8)(rng);
        auto ri = random_instance({n, 0.5, IntervalLaw::mixed, R(2), static_cast<std::uint64_t>(round + 1), false});
        RecordingSource src(ri.weights.weights);
        auto ex = make_explorer(round % 2 ? "nn" : "adaptive");
        Episode ep(ri.graph, src);
        while (!ep.view().finished()) ep.move(ex->decide(ep.view()));
        std::set<EdgeId> seen;
        for (const auto& a : src.asked) {
            CHECK(seen.insert(a.edge).second);
            const Edge& e = ri.graph.edge(a.edge);
            CHECK(e.touches(a.trigger));
            CHECK(a.order.back() == a.trigger);
            // the other endpoint was not visited before the trigger
            const auto& prior = std::vector<VertexId>(a.order.begin(), a.order.end() - 1);
            CHECK(std::find(prior.begin(), prior.end(), e.other(a.trigger)) == prior.end());
        }
        CHECK(seen.size() == static_cast<std::size_t>(ri.graph.edge_count()));
        CHECK(ep.check_reveal_invariants().empty());
    }
}

TEST_CASE("the view never carries weights of untouched edges") {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 30; ++round) {
        int n = std::uniform_int_distribution<int>(3, 9)(rng);
        auto ri = random_instance({n, 0.4, IntervalLaw::uniform, R(7, 4), static_cast<std::uint64_t>(100 + round), false});
        FixedAssignment src(ri.weights);
        std::vector<std::string> problems;
        PeekingExplorer ex(&problems);
        run_episode(ri.graph, src, ex);
        CHECK(problems.empty());
    }
}

TEST_CASE("weights outside the announced interval are an adversary fault") {
    auto g = path_graph(3, 1, 2);
    ConstantSource low(R(1, 2));
    CHECK_THROWS_AS(Episode(g, low), AdversaryFault);
    RecordingSource late({R(1), R(3)});
    Episode ep(g, late);
    CHECK_THROWS_AS(ep.move(1), AdversaryFault);
}

TEST_CASE("illegal moves and endless explorers are rejected") {
    auto g = path_graph(3);
    ConstantSource src(R(1));
    Episode ep(g, src);
    CHECK_THROWS_AS(ep.move(2), IllegalMove);

    ScriptedExplorer bounce({1, 0});
    ConstantSource src2(R(1));
    CHECK_THROWS_AS(run_episode(g, src2, bounce), NonTermination);
}

TEST_CASE("replaying an episode gives the identical report") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto ri = random_instance({7, 0.5, IntervalLaw::mixed, R(2), seed, false});
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            FixedAssignment src(ri.weights);
            AdaptiveExplorer ex;
            std::ostringstream trace;
            RunOptions opt;
            opt.trace = &trace;
            auto dump = report_to_json(run_episode(ri.graph, src, ex, opt)).dump() + trace.str();
            if (rep == 0) first = dump;
            else CHECK(dump == first);
        }
    }
}

TEST_CASE("adaptive adversaries replay identically too") {
    auto inst = build_recursive({2, 2, R(3, 2)});
    std::string first;
    for (int rep = 0; rep < 2; ++rep) {
        RecursiveAdversary adv(inst);
        NearestNeighborExplorer ex;
        auto dump = report_to_json(run_episode(inst.graph, adv, ex)).dump();
        if (rep == 0) first = dump;
        else CHECK(dump == first);
    }
}

TEST_CASE("post-hoc completions agree with the source and are flagged") {
    auto g = path_graph(4, 1, 3);
    RecordingSource src({R(1), R(2), R(3)});
    Episode ep(g, src);
    ep.move(1);
    auto w = ep.realized_assignment();
    CHECK(w.weights == std::vector<Rational>{R(1), R(2), R(3)});
    CHECK(src.completed == std::vector<EdgeId>{2});
    REQUIRE(ep.reveals().size() == 3);
    CHECK(ep.reveals().back().post_hoc);
    CHECK(ep.reveals().back().trigger == kNoVertex);
    CHECK_FALSE(ep.view().revealed[2].has_value());
    CHECK(check_assignment(g, w).empty());
}

TEST_CASE("certificate fallback is flagged and the ratio marked as a lower bound") {
    auto g = complete_graph(5, 1, 2, 0, 4);
    ConstantSource src(R(2));
    NearestNeighborExplorer ex;
    RunOptions opt;
    opt.limits.max_required = 2;
    opt.limits.search_budget = 0;
    opt.certificate = [](const WeightAssignment&) { return std::optional<std::vector<VertexId>>({0, 3, 2, 1, 4}); };
    auto rep = run_episode(g, src, ex, opt);
    CHECK(rep.offline_kind == OfflineKind::certificate);
    CHECK(rep.offline_cost == R(8));
    CHECK_FALSE(rep.offline_note.empty());
    auto j = report_to_json(rep);
    CHECK(j["ratio_is_lower_bound"] == true);
    CHECK(j["ratio_decimal"] == "1.000000");
}
