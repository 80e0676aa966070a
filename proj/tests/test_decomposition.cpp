#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "tia/builders.hpp"
#include "tia/decomposition.hpp"
#include "tia/generate.hpp"
#include "tia/rng.hpp"

using namespace tia;

namespace {

TreeDecomposition random_decomposition(const Graph& g, Rng& rng) {
    if (rng.chance(0.5) && g.vertex_count() <= kExactTreeAlphaCap)
        return exact_tree_alpha(g).td;
    return build_from_separators(
               g,
               [](const Graph& sub, const std::vector<int>&) {
                   return greedy_clique_separator(sub, Rational(2, 3));
               },
               Rational(2, 3))
        .td;
}

} // namespace

TEST_CASE("validate accepts a path decomposition and reports its numbers") {
    Graph p3 = gen_path(3);
    TreeDecomposition td({VertexSet({0, 1}), VertexSet({1, 2})}, {{0, 1}});
    auto report = validate(p3, td);
    CHECK(report.valid);
    CHECK(report.width == 1);
    CHECK(report.alpha == 1);
    CHECK(report.node_count == 2);
}

TEST_CASE("validate reports uncovered edges with a witness") {
    Graph g(3, {{0, 1}, {1, 2}, {0, 2}});
    TreeDecomposition td({VertexSet({0, 1}), VertexSet({1, 2})}, {{0, 1}});
    auto report = validate(g, td);
    CHECK_FALSE(report.valid);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].axiom == "edge-coverage");
    CHECK(report.violations[0].witness ==
          "edge (0,2) is in no bag");
}

TEST_CASE("validate reports broken occurrence connectivity") {
    Graph p3 = gen_path(3);
    TreeDecomposition td({VertexSet({0, 1}), VertexSet({1, 2}), VertexSet({0})},
                         {{0, 1}, {1, 2}});
    auto report = validate(p3, td);
    CHECK_FALSE(report.valid);
    bool found = false;
    for (const auto& v : report.violations)
        found = found || v.axiom == "connectivity";
    CHECK(found);
}

TEST_CASE("a single bag over a star is valid with alpha three") {
    Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
    TreeDecomposition td = TreeDecomposition::single_bag(star.all_vertices());
    CHECK(tia_test::brute_independence(star, star.all_vertices()) == 3);
    auto report = validate(star, td);
    CHECK(report.valid);
    CHECK(report.width == 3);
    CHECK(report.alpha == 3);
}

TEST_CASE("node cap raises a resource error") {
    Graph g(1, {});
    std::vector<VertexSet> bags(5, VertexSet({0}));
    std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
    TreeDecomposition td(bags, edges);
    ValidateOptions opt;
    opt.node_cap = 4;
    CHECK_THROWS_AS(validate(g, td, opt), ResourceError);
}

TEST_CASE("root_and_binarize duplicates high-degree centers") {
    // star-shaped node tree: center bag with three leaves
    std::vector<VertexSet> bags{VertexSet({0}), VertexSet({1}), VertexSet({2}),
                                VertexSet({3})};
    TreeDecomposition star(bags, {{0, 1}, {0, 2}, {0, 3}});
    TreeDecomposition rooted = root_and_binarize(star, 0);
    CHECK(rooted.root() >= 0);
    int center_copies = 0;
    for (int u = 0; u < rooted.node_count(); ++u) {
        CHECK(rooted.node(u).children.size() <= 2);
        if (rooted.node(u).bag == VertexSet({0}))
            ++center_copies;
    }
    CHECK(center_copies == 3); // original plus a chain of two copies

    // degree-four center: the five-node tree becomes eight nodes
    std::vector<VertexSet> bags5{VertexSet({0}), VertexSet({1}), VertexSet({2}),
                                 VertexSet({3}), VertexSet({4})};
    TreeDecomposition star5(bags5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(root_and_binarize(star5, 0).node_count() == 8);

    // an already binary tree keeps its node count
    TreeDecomposition chain({VertexSet({0}), VertexSet({1})}, {{0, 1}});
    CHECK(root_and_binarize(chain, 1).node_count() == 2);
    CHECK_THROWS_AS(root_and_binarize(chain, 9), InputError);
}

TEST_CASE("root_and_binarize preserves validity, width and alpha") {
    Rng rng(17);
    for (int round = 0; round < 10; ++round) {
        int n = 4 + (int)rng.below(7);
        Graph g = gen_gnp(n, 0.35, rng);
        TreeDecomposition td = random_decomposition(g, rng);
        auto before = validate(g, td);
        REQUIRE(before.valid);
        TreeDecomposition rooted =
            root_and_binarize(td, (int)rng.below((std::uint64_t)td.node_count()));
        auto after = validate(g, rooted);
        CHECK(after.valid);
        CHECK(after.width == before.width);
        CHECK(after.alpha == before.alpha);
        for (int u = 0; u < rooted.node_count(); ++u)
            CHECK(rooted.node(u).children.size() <= 2);
    }
}

TEST_CASE("make_nice expands a single edge bag into the textbook chain") {
    Graph edge(2, {{0, 1}});
    TreeDecomposition td = TreeDecomposition::single_bag(VertexSet({0, 1}));
    TreeDecomposition nice = make_nice(edge, td);
    CHECK(nice.kind() == DecompositionKind::Nice);
    auto report = validate(edge, nice);
    CHECK(report.valid);
    // leaf, two introduces, two forgets
    CHECK(nice.node_count() == 5);
    CHECK(nice.node(nice.root()).bag.empty());
    int leaves = 0, intro = 0, forg = 0;
    for (int u = 0; u < nice.node_count(); ++u) {
        switch (nice.node(u).tag) {
        case NodeTag::Leaf: ++leaves; break;
        case NodeTag::Introduce: ++intro; break;
        case NodeTag::Forget: ++forg; break;
        default: break;
        }
    }
    CHECK(leaves == 1);
    CHECK(intro == 2);
    CHECK(forg == 2);
}

TEST_CASE("make_nice handles the empty graph") {
    Graph empty(0, {});
    TreeDecomposition td = TreeDecomposition::single_bag(VertexSet());
    TreeDecomposition nice = make_nice(empty, td);
    CHECK(validate(empty, nice).valid);
    CHECK(nice.node_count() == 1);
    CHECK(nice.node(nice.root()).tag == NodeTag::Leaf);
}

TEST_CASE("make_nice on a C4 decomposition stays small") {
    Graph c4 = gen_cycle(4);
    TreeDecomposition td({VertexSet({0, 1, 2}), VertexSet({0, 2, 3})}, {{0, 1}});
    TreeDecomposition nice = make_nice(c4, td);
    auto report = validate(c4, nice);
    CHECK(report.valid);
    CHECK(report.width == 2);
    CHECK(report.alpha <= 2);
    CHECK(nice.node_count() <= 16);
}

TEST_CASE("make_nice rejects invalid input with the validation report") {
    Graph g(3, {{0, 1}, {1, 2}, {0, 2}});
    TreeDecomposition td({VertexSet({0, 1}), VertexSet({1, 2})}, {{0, 1}});
    CHECK_THROWS_WITH(make_nice(g, td),
                      Catch::Matchers::ContainsSubstring("edge-coverage"));
}

TEST_CASE("make_nice output properties over random inputs") {
    Rng rng(29);
    for (int round = 0; round < 12; ++round) {
        int n = 3 + (int)rng.below(8);
        Graph g = gen_gnp(n, 0.4, rng);
        TreeDecomposition td = random_decomposition(g, rng);
        auto before = validate(g, td);
        REQUIRE(before.valid);
        TreeDecomposition nice = make_nice(g, td);
        auto after = validate(g, nice);
        CHECK(after.valid);
        CHECK(after.width <= before.width);
        CHECK(after.alpha <= before.alpha);
        CHECK(nice.node_count() <= 4 * (before.width + 1) * std::max(n, 1) + 4);
        // every nice bag is a subset of some input bag
        for (int u = 0; u < nice.node_count(); ++u) {
            bool inside = false;
            for (int v = 0; v < td.node_count() && !inside; ++v)
                inside = nice.node(u).bag.subset_of(td.node(v).bag);
            CHECK(inside);
        }
        // joins never outnumber leaves minus one
        int joins = 0, leaves = 0;
        for (int u = 0; u < nice.node_count(); ++u) {
            if (nice.node(u).tag == NodeTag::Join)
                ++joins;
            if (nice.node(u).tag == NodeTag::Leaf)
                ++leaves;
        }
        CHECK(joins <= std::max(leaves - 1, 0));
    }
}

TEST_CASE("alpha_of_decomposition on fixed cases") {
    Graph c5 = gen_cycle(5);
    TreeDecomposition td(
        {VertexSet({0, 1, 2}), VertexSet({0, 2, 3}), VertexSet({0, 3, 4})},
        {{0, 1}, {1, 2}});
    REQUIRE(validate(c5, td).valid);
    CHECK(tia_test::brute_independence(c5, VertexSet({0, 1, 2})) == 2);
    CHECK(alpha_of_decomposition(c5, td) == 2);

    Graph edgeless(5, {});
    CHECK(alpha_of_decomposition(edgeless,
                                 TreeDecomposition::single_bag(
                                     edgeless.all_vertices())) == 5);
}
