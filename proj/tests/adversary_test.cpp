#include <doctest.h>

#include "geewe/adversaries.hpp"
#include "geewe/errors.hpp"
#include "geewe/explorers.hpp"
#include "geewe/instance_io.hpp"
#include "helpers.hpp"

using namespace geewe;
using namespace geewe::testing;

namespace {

std::int64_t power(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

Rational walk_cost(const EstimateGraph& g, const WeightAssignment& w, const std::vector<VertexId>& walk) {
    return evaluate_walk(g, w.weights, walk).cost();
}

}  // namespace

TEST_CASE("recursive sizes match the closed forms") {
    for (int k = 2; k <= 4; ++k) {
        for (int depth = 0; depth <= 3; ++depth) {
            auto inst = build_recursive({k, depth, R(3, 2)});
            const std::int64_t kd = power(k, depth);
            const std::int64_t vertices = kd * (k + 1) + 2 * (kd - 1) / (k - 1);
            const std::int64_t edges = kd * k + 4 * k * (kd - 1) / (k - 1);
            CHECK(inst.graph.vertex_count() == vertices);
            CHECK(inst.graph.edge_count() == edges);
            CHECK(recursive_vertex_count(k, depth) == vertices);
            CHECK(recursive_edge_count(k, depth) == edges);
            CHECK(validate(inst.graph).empty());
        }
    }
}

TEST_CASE("recursive level-i intervals are [k^i, alpha k^i]") {
    auto inst = build_recursive({3, 2, R(7, 4)});
    for (EdgeId e = 0; e < inst.graph.edge_count(); ++e) {
        const auto& comp = inst.components[static_cast<std::size_t>(inst.edge_owner[static_cast<std::size_t>(e)])];
        const Edge& edge = inst.graph.edge(e);
        const Rational base(power(3, comp.depth));
        CHECK(edge.lower == base);
        CHECK(edge.upper == (comp.depth == 0 ? base : R(7, 4) * base));
    }
}

TEST_CASE("recursive spec validation and alpha clamp") {
    CHECK_THROWS_AS(build_recursive({1, 1, R(2)}), InvalidInput);
    CHECK_THROWS_AS(build_recursive({2, -1, R(2)}), InvalidInput);
    CHECK_THROWS_AS(build_recursive({2, 1, R(1, 2)}), InvalidInput);
    CHECK(build_recursive({2, 1, R(3)}).spec.alpha == R(2));
    CHECK(recursive_online_bound(3, 2, R(5)) == R(153));
}

TEST_CASE("depth 0 is a unit path that costs k for everyone") {
    auto inst = build_recursive({3, 0, R(2)});
    CHECK(inst.graph.vertex_count() == 4);
    for (const auto& name : explorer_names()) {
        RecursiveAdversary adv(inst);
        auto ex = make_explorer(name);
        auto rep = run_episode(inst.graph, adv, *ex);
        CHECK(rep.online_cost == R(3));
        CHECK(walk_cost(inst.graph, rep.realized, recursive_certificate(inst, rep.realized)) == R(3));
    }
}

TEST_CASE("the first touched distinguished vertex becomes the start") {
    // k = 2, depth 1: P = 0, C1 = 1..3, C2 = 4..6, Q = 7.
    auto inst = build_recursive({2, 1, R(2)});
    RecursiveAdversary adv(inst);
    Episode ep(inst.graph, adv);
    CHECK(ep.view().revealed[static_cast<std::size_t>(*inst.graph.edge_between(0, 1))] == R(2));
    CHECK(ep.view().revealed[static_cast<std::size_t>(*inst.graph.edge_between(0, 3))] == R(2));
    ep.move(3);  // enter C1 at its second distinguished vertex
    auto w = [&](VertexId a, VertexId b) { return ep.view().revealed[static_cast<std::size_t>(*inst.graph.edge_between(a, b))]; };
    CHECK(w(3, 4) == R(2));
    CHECK(w(3, 6) == R(2));
    ep.move(2);
    ep.move(1);
    CHECK(w(1, 4) == R(4));
    CHECK(w(1, 6) == R(4));
}

TEST_CASE("depth 2, k = 3, alpha = 2: online at least 153, certificate 99") {
    auto inst = build_recursive({3, 2, R(2)});
    CHECK(recursive_online_bound(3, 2, R(2)) == R(153));
    CHECK(recursive_offline_cost(3, 2) == R(99));
    for (const auto& name : explorer_names()) {
        RecursiveAdversary adv(inst);
        auto ex = make_explorer(name);
        RunOptions opt;
        opt.compute_offline = false;
        auto rep = run_episode(inst.graph, adv, *ex, opt);
        CHECK(rep.online_cost >= R(153));
        CHECK(walk_cost(inst.graph, rep.realized, recursive_certificate(inst, rep.realized)) == R(99));
    }
}

TEST_CASE("depth 2, k = 2: the exact optimum equals the certificate") {
    auto inst = build_recursive({2, 2, R(3, 2)});
    CHECK(inst.graph.vertex_count() == 18);
    for (const auto& name : explorer_names()) {
        RecursiveAdversary adv(inst);
        auto ex = make_explorer(name);
        auto rep = run_episode(inst.graph, adv, *ex);
        REQUIRE(rep.offline_kind == OfflineKind::exact);
        CHECK(rep.offline_cost == R(32));
        CHECK(walk_cost(inst.graph, rep.realized, recursive_certificate(inst, rep.realized)) == R(32));
        CHECK(rep.online_cost >= recursive_online_bound(2, 2, R(3, 2)));
    }
}

TEST_CASE("K8 phase adversary against adaptive: 10 online, 7 offline") {
    auto pi = build_complete_adversary(8, R(2));
    CHECK(pi.phase == 4);
    PhaseAdversary adv(pi.graph, pi.phase, pi.alpha, "complete");
    AdaptiveExplorer ex;
    auto rep = run_episode(pi.graph, adv, ex);
    CHECK(rep.online_cost == R(10));
    CHECK(rep.offline_cost == R(7));
    CHECK(rep.offline_kind == OfflineKind::exact);
}

TEST_CASE("phase adversary prices by the first visited block") {
    auto pi = build_complete_adversary(6, R(3, 2));
    PhaseAdversary adv(pi.graph, pi.phase, pi.alpha, "complete");
    std::vector<VertexId> order{0, 1, 2, 3};
    CHECK(adv.reveal(*pi.graph.edge_between(3, 4), 3, order) == R(3, 2));
    CHECK(adv.reveal(*pi.graph.edge_between(2, 4), 3, order) == R(1));
    std::vector<VertexId> early{0, 1, 2};
    CHECK(adv.reveal(*pi.graph.edge_between(2, 4), 2, early) == R(1));
}

TEST_CASE("bipartite adversary on K_{2,2} and K_{3,2}") {
    auto even = build_bipartite_adversary(2, 2, R(2));
    CHECK(even.graph.start() == 0);
    CHECK(even.graph.end() == 3);
    auto odd = build_bipartite_adversary(3, 2, R(2));
    CHECK(odd.graph.end() == 2);
    for (auto* pi : {&even, &odd}) {
        PhaseAdversary adv(pi->graph, pi->phase, pi->alpha, "bipartite");
        AdaptiveExplorer ex;
        auto rep = run_episode(pi->graph, adv, ex);
        REQUIRE(rep.ratio);
        CHECK(*rep.ratio <= R(3, 2));
    }
    CHECK_THROWS_AS(complete_bipartite(4, 2, R(2)), InvalidInput);
}

TEST_CASE("alpha = 1 makes every adversary harmless") {
    auto pi = build_complete_adversary(6, R(1));
    PhaseAdversary adv(pi.graph, pi.phase, pi.alpha, "complete");
    AdaptiveExplorer ex;
    auto rep = run_episode(pi.graph, adv, ex);
    CHECK(rep.ratio == R(1));
}

TEST_CASE("random instances are reproducible from the seed") {
    RandomSpec spec{9, 0.4, IntervalLaw::mixed, R(2), 7, false};
    auto a = random_instance(spec);
    auto b = random_instance(spec);
    CHECK(dump_instance(a.graph, &a.weights) == dump_instance(b.graph, &b.weights));
    spec.seed = 8;
    auto c = random_instance(spec);
    CHECK(dump_instance(a.graph, &a.weights) != dump_instance(c.graph, &c.weights));
}

TEST_CASE("random instances respect their interval law") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto mixed = random_instance({8, 0.5, IntervalLaw::mixed, R(7, 4), seed, false});
        CHECK(check_assignment(mixed.graph, mixed.weights).empty());
        CHECK(alpha_of(mixed.graph).alpha <= R(7, 4));
        auto uniform = random_instance({8, 0.5, IntervalLaw::uniform, R(7, 4), seed, true});
        CHECK(uniform.graph.edge_count() == 28);
        CHECK(alpha_of(uniform.graph).uniform);
        CHECK(check_assignment(uniform.graph, uniform.weights).empty());
    }
    CHECK_THROWS_AS(random_instance({40, 0.001, IntervalLaw::uniform, R(2), 1, false}), InvalidInput);
    CHECK_THROWS_AS(random_instance({1, 0.5, IntervalLaw::uniform, R(2), 1, false}), InvalidInput);
}
