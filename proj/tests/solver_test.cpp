#include <doctest.h>

#include <numeric>
#include <random>

#include "geewe/errors.hpp"
#include "geewe/solver.hpp"
#include "helpers.hpp"

using namespace geewe;
using namespace geewe::testing;

namespace {

std::vector<VertexId> all_vertices(const EstimateGraph& g) {
    std::vector<VertexId> v(static_cast<std::size_t>(g.vertex_count()));
    std::iota(v.begin(), v.end(), 0);
    return v;
}

CoverTask full_task(const EstimateGraph& g, std::vector<Rational> w) {
    return CoverTask{std::move(w), g.start(), g.end(), all_vertices(g), {}};
}

KnowledgeView blank_view(const EstimateGraph& g) {
    KnowledgeView v;
    v.graph = &g;
    v.visited.assign(static_cast<std::size_t>(g.vertex_count()), false);
    v.revealed.assign(static_cast<std::size_t>(g.edge_count()), std::nullopt);
    return v;
}

void visit(KnowledgeView& v, VertexId x, std::span<const Rational> actual) {
    v.visited[static_cast<std::size_t>(x)] = true;
    v.visit_order.push_back(x);
    v.history.push_back(x);
    v.position = x;
    for (const auto& nb : v.graph->neighbors(x)) v.revealed[static_cast<std::size_t>(nb.edge)] = actual[static_cast<std::size_t>(nb.edge)];
}

}  // namespace

TEST_CASE("optimal cover walk on the three-vertex path") {
    auto p3 = path_graph(3);
    auto r = optimal_cover_walk(p3, full_task(p3, uniform_weights(p3, 1)));
    CHECK(r.cost == R(2));
    CHECK(r.walk.vertices == std::vector<VertexId>{0, 1, 2});
    CHECK(brute_force_cover(p3, full_task(p3, uniform_weights(p3, 1))).cost == R(2));
}

TEST_CASE("optimal cover walk on unit K4") {
    auto k4 = complete_graph(4, 1, 1, 0, 3);
    auto r = optimal_cover_walk(k4, full_task(k4, uniform_weights(k4, 1)));
    CHECK(r.cost == R(3));
    CHECK(r.visit_order == std::vector<VertexId>{0, 1, 2, 3});
}

TEST_CASE("cheapest K8 cover when every edge touching the first half is cheap") {
    // First four vertices play the cheap phase; edges inside the rest weigh 2.
    auto k8 = complete_graph(8, 1, 2, 0, 7);
    std::vector<Rational> w;
    for (const auto& e : k8.edges()) w.push_back(e.a < 4 || e.b < 4 ? R(1) : R(2));
    auto task = full_task(k8, w);
    auto bf = brute_force_cover(k8, task);
    CHECK(bf.cost == R(7));
    CHECK(optimal_cover_walk(k8, task).cost == R(7));
    for (std::size_t i = 0; i < bf.walk.steps(); ++i) CHECK(bf.walk.step_costs[i] == R(1));
}

TEST_CASE("brute force fixtures") {
    EstimateGraph c4 = EstimateGraph::checked(4, {E(0, 1), E(1, 2), E(2, 3), E(3, 0)}, 0, 3);
    std::vector<Rational> w{1, 1, 1, 5};
    auto r = brute_force_cover(c4, full_task(c4, w));
    CHECK(r.cost == R(3));
    CHECK(r.walk.vertices == std::vector<VertexId>{0, 1, 2, 3});

    CoverTask bare{w, 0, 3, {}, {}};
    CHECK(brute_force_cover(c4, bare).cost == R(3));
    CHECK(optimal_cover_walk(c4, bare).cost == R(3));

    auto big = path_graph(11);
    CHECK_THROWS_AS(brute_force_cover(big, full_task(big, uniform_weights(big, 1))), SolverCapExceeded);
}

TEST_CASE("origin equal to destination returns to the origin") {
    auto p3 = path_graph(3);
    CoverTask t{uniform_weights(p3, 1), 1, 1, {0, 2}, {}};
    auto r = optimal_cover_walk(p3, t);
    CHECK(r.cost == R(4));
    CHECK(brute_force_cover(p3, t).cost == R(4));
    CoverTask stay{uniform_weights(p3, 1), 1, 1, {}, {}};
    CHECK(optimal_cover_walk(p3, stay).walk.vertices == std::vector<VertexId>{1});
}

TEST_CASE("size cap is an explicit error") {
    auto p = path_graph(25);
    SolverLimits strict;
    strict.search_budget = 0;
    CHECK_THROWS_AS(optimal_cover_walk(p, full_task(p, uniform_weights(p, 1)), strict), SolverCapExceeded);
    SolverLimits tiny;
    tiny.max_required = 4;
    tiny.search_budget = 3;
    auto k8 = complete_graph(8, 1, 2, 0, 7);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(optimal_cover_walk(k8, full_task(k8, random_weights(rng, k8)), tiny), SolverCapExceeded);
}

TEST_CASE("subset DP equals brute force on 200 random instances") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 200; ++round) {
        int n = std::uniform_int_distribution<int>(2, 9)(rng);
        auto g = random_connected(rng, n, 0.35);
        auto task = full_task(g, random_weights(rng, g));
        auto dp = optimal_cover_walk(g, task);
        auto bf = brute_force_cover(g, task);
        CHECK(dp.method == SolveMethod::subset_dp);
        CHECK(dp.cost == bf.cost);
        CHECK(dp.visit_order == bf.visit_order);
        CHECK(walk_violations(g, task.weights, dp.walk).empty());
        CHECK(walk_covers(dp.walk, g.start(), g.end(), task.must_visit));
    }
}

TEST_CASE("branch and bound matches subset DP including tie-breaking") {
    std::mt19937_64 rng(77);
    SolverLimits search_only;
    search_only.max_required = 2;
    for (int round = 0; round < 150; ++round) {
        int n = std::uniform_int_distribution<int>(3, 11)(rng);
        auto g = random_connected(rng, n, std::uniform_real_distribution<double>(0.1, 0.9)(rng));
        auto w = random_weights(rng, g, 3, 1);  // few distinct values, many ties
        std::vector<VertexId> must;
        for (VertexId v = 0; v < n; ++v)
            if (std::uniform_int_distribution<int>(0, 3)(rng) != 0) must.push_back(v);
        CoverTask task{w, 0, static_cast<VertexId>(n - 1), must, {}};
        auto dp = optimal_cover_walk(g, task);
        auto bb = optimal_cover_walk(g, task, search_only);
        if (bb.visit_order.size() > 2) CHECK(bb.method == SolveMethod::branch_and_bound);
        CHECK(bb.cost == dp.cost);
        CHECK(bb.visit_order == dp.visit_order);
        task.hint = dp.walk.vertices;
        CHECK(optimal_cover_walk(g, task, search_only).visit_order == dp.visit_order);
    }
}

TEST_CASE("branch and bound with the degree and tree bounds matches subset DP") {
    std::mt19937_64 rng(2024);
    SolverLimits search_only;
    search_only.max_required = 2;
    for (int round = 0; round < 40; ++round) {
        int n = std::uniform_int_distribution<int>(14, 17)(rng);
        auto g = random_connected(rng, n, std::uniform_real_distribution<double>(0.05, 0.4)(rng));
        auto w = random_weights(rng, g, round % 2 ? 3 : 8, 2);
        auto task = full_task(g, w);
        auto dp = optimal_cover_walk(g, task);
        auto bb = optimal_cover_walk(g, task, search_only);
        CHECK(bb.method == SolveMethod::branch_and_bound);
        CHECK(bb.cost == dp.cost);
        CHECK(bb.visit_order == dp.visit_order);
    }
}

TEST_CASE("raising an edge weight never lowers the optimum") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 60; ++round) {
        int n = std::uniform_int_distribution<int>(3, 8)(rng);
        auto g = random_connected(rng, n, 0.4);
        auto task = full_task(g, random_weights(rng, g));
        auto base = optimal_cover_walk(g, task).cost;
        auto e = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, g.edge_count() - 1)(rng));
        task.weights[e] += R(1, 2);
        CHECK(optimal_cover_walk(g, task).cost >= base);
    }
}

TEST_CASE("worst case cover walk prices unrevealed edges pessimistically") {
    auto k4 = complete_graph(4, 1, 2, 0, 3);
    auto actual = uniform_weights(k4, 1);

    SUBCASE("nothing beyond the start revealed") {
        auto k5 = complete_graph(5, 1, 2, 0, 4);
        auto v = blank_view(k5);
        v.visited[0] = true;
        v.visit_order = {0};
        v.position = 0;
        // start edges revealed at the upper bound as well
        for (const auto& nb : k5.neighbors(0)) v.revealed[static_cast<std::size_t>(nb.edge)] = R(2);
        CHECK(worst_case_cover_walk(v, 4).cost == R(2) * R(4));
    }
    SUBCASE("after one unit step in K4") {
        auto v = blank_view(k4);
        visit(v, 0, actual);
        visit(v, 1, actual);
        v.paid = R(1);
        auto r = worst_case_cover_walk(v, 3);
        CoverTask same{v.pessimistic_weights(), 1, 3, {2, 3}, {}};
        CHECK(r.cost == brute_force_cover(k4, same).cost);
        CHECK(r.cost == R(3));  // revealed 1->2 at 1, unrevealed 2->3 at 2
        // 2->0->3 over revealed unit edges ties with the direct unrevealed 2->3
        CHECK(r.visit_order == std::vector<VertexId>{1, 2, 3});
        CHECK(r.walk.vertices == std::vector<VertexId>{1, 2, 0, 3});
    }
    SUBCASE("everything revealed matches the plain oracle") {
        auto v = blank_view(k4);
        std::mt19937_64 rng(3);
        std::vector<Rational> w;
        for (int e = 0; e < k4.edge_count(); ++e) w.push_back(R(std::uniform_int_distribution<int>(4, 8)(rng), 4));
        for (VertexId x : {0, 2, 1, 3}) visit(v, x, w);
        v.visited[3] = false;  // keep 3 as the open destination; its edges stay revealed
        v.visit_order.pop_back();
        v.position = 1;
        CoverTask same{w, 1, 3, {}, {}};
        CHECK(worst_case_cover_walk(v, 3).cost == optimal_cover_walk(k4, same).cost);
    }
}
