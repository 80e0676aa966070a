#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tia/generate.hpp"
#include "tia/oracle.hpp"
#include "tia/test_hooks.hpp"

using namespace tia;

TEST_CASE("brute force on fixed instances") {
    Graph edge(2, {{0, 1}}, {Rational(2), Rational(3)});
    auto best = brute_force_solve(edge, problem_by_name("mwis"));
    REQUIRE(best.has_value());
    CHECK(best->weight == Rational(3));
    CHECK(best->set == VertexSet({1}));

    auto forest = brute_force_solve(gen_cycle(4), problem_by_name("induced-forest"));
    REQUIRE(forest.has_value());
    CHECK(forest->weight == Rational(3));

    CHECK_THROWS_AS(brute_force_solve(Graph(21, {}), problem_by_name("mwis")),
                    ResourceError);
}

TEST_CASE("induced subgraph optima of the Petersen graph") {
    // regression constants produced by this oracle itself
    Graph pet = tia_test::petersen_graph();
    auto linear = brute_force_solve(pet, problem_by_name("induced-linear-forest"));
    REQUIRE(linear.has_value());
    CHECK(linear->weight == Rational(6));
    auto forest = brute_force_solve(pet, problem_by_name("induced-forest"));
    CHECK(forest->weight == Rational(7)); // feedback vertex number three
    auto mwis = brute_force_solve(pet, problem_by_name("mwis"));
    CHECK(mwis->weight == Rational(4));
}

TEST_CASE("contextual equivalence of identical pieces") {
    BoundariedGraph piece{gen_path(3), {0, 2}};
    auto verdict = contextual_equivalence(problem_by_name("induced-forest"), piece,
                                          piece, 50, 6, 3);
    CHECK(verdict.equivalent);
    CHECK(verdict.trials_run == 50);
}

TEST_CASE("a path and an edge connecting the same boundary pair are equivalent") {
    ProblemSpec spec = problem_by_name("induced-forest");
    BoundariedGraph path{gen_path(3), {0, 2}};
    BoundariedGraph edge{Graph(2, {{0, 1}}), {0, 1}};
    auto verdict = contextual_equivalence(spec, path, edge, 200, 6, 5);
    CHECK(verdict.equivalent);
}

TEST_CASE("matched and unmatched boundary vertices are distinguished") {
    ProblemSpec spec = problem_by_name("induced-matching");
    BoundariedGraph matched{Graph(2, {{0, 1}}), {0}};
    BoundariedGraph lone{Graph(1, {}), {0}};
    auto verdict = contextual_equivalence(spec, matched, lone, 200, 6, 7);
    CHECK_FALSE(verdict.equivalent);
}

TEST_CASE("boundary length mismatch is an input error") {
    BoundariedGraph a{gen_path(3), {0, 2}};
    BoundariedGraph b{gen_path(3), {0}};
    CHECK_THROWS_AS(
        contextual_equivalence(problem_by_name("mwis"), a, b, 10, 4, 1),
        InputError);
}

TEST_CASE("cross-check reports are deterministic in the seed") {
    CrossCheckOptions opt;
    opt.seed = 1234;
    opt.instances = 2;
    opt.with_mod = false;
    auto first = cross_check_suite(opt);
    auto second = cross_check_suite(opt);
    CHECK(first.lines == second.lines);
    CHECK(first.failures == 0);
    CrossCheckOptions none;
    none.instances = 0;
    auto empty = cross_check_suite(none);
    CHECK(empty.checks == 0);
    CHECK(empty.all_passed());
}

TEST_CASE("dropping the join treewidth check is caught by the suite") {
    test_hooks::faults().skip_join_treewidth_check = true;
    CrossCheckOptions opt;
    opt.seed = 11;
    opt.instances = 6;
    opt.with_mod = false;
    auto report = cross_check_suite(opt);
    test_hooks::faults().skip_join_treewidth_check = false;
    CHECK(report.failures >= 1);
}
