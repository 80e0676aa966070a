#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tia/generate.hpp"
#include "tia/graph.hpp"
#include "tia/rng.hpp"

using namespace tia;

TEST_CASE("graph construction rejects bad input") {
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), InputError);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), InputError);
    CHECK_THROWS_AS(Graph(1, {}, {Rational(-1)}), InputError);
    Graph g(3, {{0, 1}, {1, 0}, {1, 2}}); // duplicate edge collapses
    CHECK(g.edge_count() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(!g.adjacent(0, 2));
    CHECK(g.weight(1) == Rational(1));
}

TEST_CASE("vertex sets are canonical and ordered") {
    VertexSet s({3, 1, 2, 1});
    CHECK(s.size() == 3);
    CHECK(s.ids() == std::vector<int>{1, 2, 3});
    CHECK(s.with(0).ids() == std::vector<int>{0, 1, 2, 3});
    CHECK(s.without(2).ids() == std::vector<int>{1, 3});
    CHECK(VertexSet({1, 2}).subset_of(s));
    CHECK(VertexSet({1, 4}) < VertexSet({2}));
    CHECK(s.unite(VertexSet({0, 4})).size() == 5);
    CHECK(s.intersect(VertexSet({2, 3, 4})).ids() == std::vector<int>{2, 3});
    CHECK(s.minus(VertexSet({2})).ids() == std::vector<int>{1, 3});
}

TEST_CASE("induced subgraphs restrict edges and weights") {
    Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
    auto sub = induced_subgraph(triangle, VertexSet({0, 1}));
    CHECK(sub.graph.vertex_count() == 2);
    CHECK(sub.graph.edge_count() == 1);
    CHECK(sub.original_ids == std::vector<int>{0, 1});

    auto empty = induced_subgraph(triangle, VertexSet());
    CHECK(empty.graph.vertex_count() == 0);
    CHECK(empty.graph.edge_count() == 0);

    Graph c5 = gen_cycle(5);
    auto odd = induced_subgraph(c5, VertexSet({0, 2, 4}));
    // enumerate C5 edges inside {0,2,4}: only (4,0) survives
    CHECK(odd.graph.edge_count() == 1);
    CHECK(odd.graph.adjacent(0, 2)); // local ids of 0 and 4
    CHECK_FALSE(odd.graph.adjacent(0, 1));

    CHECK_THROWS_AS(induced_subgraph(triangle, VertexSet({0, 7})), InputError);
}

TEST_CASE("induced subgraph on the full vertex set is the identity") {
    Rng rng(5);
    Graph g = gen_gnp(9, 0.4, rng);
    auto same = induced_subgraph(g, g.all_vertices());
    CHECK(same.graph.vertex_count() == g.vertex_count());
    CHECK(same.graph.edge_list() == g.edge_list());
    CHECK(same.original_ids == g.all_vertices().ids());
}

TEST_CASE("independence number on fixed graphs") {
    CHECK(independence_number(tia_test::complete_graph(3)) == 1);
    CHECK(independence_number(Graph(4, {})) == 4);
    Graph c5 = gen_cycle(5);
    CHECK(tia_test::brute_independence(c5, c5.all_vertices()) == 2);
    CHECK(independence_number(c5) == 2);
    CHECK(independence_number(tia_test::petersen_graph()) == 4);
}

TEST_CASE("independence number matches subset enumeration") {
    Rng rng(11);
    for (int round = 0; round < 40; ++round) {
        int n = 1 + (int)rng.below(16);
        Graph g = gen_gnp(n, 0.15 + 0.6 * rng.unit(), rng);
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (rng.chance(0.7))
                members.push_back(v);
        VertexSet s(std::move(members));
        CHECK(independence_number(g, s) == tia_test::brute_independence(g, s));
    }
}

TEST_CASE("independence cap raises a resource error") {
    Graph g(50, {});
    CHECK_THROWS_AS(independence_number(g, g.all_vertices(), 40), ResourceError);
    CHECK(independence_number(g, g.all_vertices(), 64) == 50);
}

TEST_CASE("treewidth tests on fixed graphs") {
    Graph triangle = tia_test::complete_graph(3);
    CHECK_FALSE(treewidth_less_than(triangle, 2)); // a triangle is no forest
    CHECK(treewidth_less_than(triangle, 3));
    Graph k4 = tia_test::complete_graph(4);
    CHECK(tia_test::brute_treewidth(k4) == 3);
    CHECK_FALSE(treewidth_less_than(k4, 3));
    CHECK(treewidth_less_than(k4, 4));
    CHECK(treewidth_less_than(Graph(0, {}), 1));
    CHECK(treewidth_less_than(Graph(4, {}), 1));
    CHECK_FALSE(treewidth_less_than(Graph(2, {{0, 1}}), 1));
    CHECK_THROWS_AS(treewidth_less_than(triangle, 0), InputError);
}

TEST_CASE("treewidth decision matches minimization over all orders") {
    Rng rng(23);
    for (int round = 0; round < 20; ++round) {
        int n = 4 + (int)rng.below(5); // 4..8
        Graph g = gen_gnp(n, 0.2 + 0.6 * rng.unit(), rng);
        int tw = tia_test::brute_treewidth(g);
        for (int t = 1; t <= n; ++t)
            CHECK(treewidth_less_than(g, t) == (tw < t));
    }
    // one size-9 instance
    Rng rng9(77);
    Graph g = gen_gnp(9, 0.5, rng9);
    int tw = tia_test::brute_treewidth(g);
    for (int t = 1; t <= 9; ++t)
        CHECK(treewidth_less_than(g, t) == (tw < t));
}

TEST_CASE("elimination orders certify the width bound") {
    Rng rng(31);
    for (int round = 0; round < 15; ++round) {
        int n = 3 + (int)rng.below(7);
        Graph g = gen_gnp(n, 0.4, rng);
        for (int t = 2; t <= 4; ++t) {
            auto order = elimination_order_with_width_below(g, t);
            if (!order)
                continue;
            REQUIRE((int)order->size() == n);
            std::vector<char> eliminated((std::size_t)n, 0);
            for (int v : *order) {
                CHECK(tia_test::back_degree(g, eliminated, v) <= t - 1);
                eliminated[(std::size_t)v] = 1;
            }
        }
    }
}

TEST_CASE("treewidth oracle memoizes subset queries") {
    Graph c5 = gen_cycle(5);
    TreewidthOracle tw(c5, 2);
    CHECK(tw.less_than(VertexSet({0, 1, 2})));      // path
    CHECK_FALSE(tw.less_than(c5.all_vertices()));   // the cycle itself
    CHECK(tw.less_than(VertexSet({0, 1, 2})));      // cached
    CHECK(tw.queries() == 2);
}
