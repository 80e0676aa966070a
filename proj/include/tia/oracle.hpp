#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tia/boundaried.hpp"
#include "tia/builders.hpp"
#include "tia/errors.hpp"
#include "tia/generate.hpp"
#include "tia/graph.hpp"
#include "tia/problems.hpp"
#include "tia/rng.hpp"
#include "tia/solver.hpp"

// Ground-truth engines. brute_force_solve enumerates subsets straight from
// the problem definition and deliberately shares nothing with the table or
// signature machinery.

namespace tia {

inline constexpr int kBruteForceCap = 20;

inline std::optional<Solution> brute_force_solve(const Graph& g,
                                                 const ProblemSpec& spec) {
    int n = g.vertex_count();
    if (n > kBruteForceCap)
        throw ResourceError("brute_force_solve: " + std::to_string(n) +
                            " vertices exceed cap " + std::to_string(kBruteForceCap));
    std::optional<Solution> best;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1)
                members.push_back(v);
        VertexSet f(std::move(members));
        InducedGraph sub = induced_subgraph(g, f);
        if (!treewidth_less_than(sub.graph, spec.t))
            continue;
        if (!spec.accepts(sub.graph))
            continue;
        Rational w = g.weight_of(f);
        if (!best || best->weight < w || (best->weight == w && f < best->set)) {
            Solution s;
            s.set = std::move(f);
            s.weight = w;
            s.treewidth_ok = true;
            s.accepts_ok = true;
            best = std::move(s);
        }
    }
    return best;
}

struct ContextualVerdict {
    bool equivalent = true;
    int trials_run = 0;
    std::optional<BoundariedGraph> counterexample;
};

namespace detail {

// Random context: fresh vertices with Erdos-Renyi edges among themselves and
// independent attachments to the boundary positions; no boundary-boundary
// edges. Rejection keeps only contexts of treewidth below t.
inline BoundariedGraph random_context(int boundary_size, int context_size, int t,
                                      Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        int fresh = (int)rng.below((std::uint64_t)context_size + 1);
        int n = boundary_size + fresh;
        std::vector<std::pair<int, int>> edges;
        for (int a = boundary_size; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (rng.chance(0.4))
                    edges.emplace_back(a, b);
        for (int a = boundary_size; a < n; ++a)
            for (int b = 0; b < boundary_size; ++b)
                if (rng.chance(0.4))
                    edges.emplace_back(a, b);
        Graph g(n, edges);
        if (t >= 3 && n > kTreewidthVertexCap)
            continue;
        if (!treewidth_less_than(g, t))
            continue;
        BoundariedGraph out;
        out.graph = std::move(g);
        for (int b = 0; b < boundary_size; ++b)
            out.boundary.push_back(b);
        return out;
    }
    // fall back to the empty context
    BoundariedGraph out;
    out.graph = Graph(boundary_size, {});
    for (int b = 0; b < boundary_size; ++b)
        out.boundary.push_back(b);
    return out;
}

} // namespace detail

// Empirical equivalence test: glue the same random contexts onto both pieces
// with the identity boundary matching and compare (tw < t and accepts).
inline ContextualVerdict contextual_equivalence(const ProblemSpec& spec,
                                                const BoundariedGraph& g1,
                                                const BoundariedGraph& g2, int trials,
                                                int context_size, std::uint64_t seed) {
    if (g1.boundary.size() != g2.boundary.size())
        throw InputError("contextual_equivalence: boundary length mismatch");
    ContextualVerdict verdict;
    Rng rng(seed);
    std::vector<std::pair<int, int>> identity;
    for (std::size_t i = 0; i < g1.boundary.size(); ++i)
        identity.emplace_back((int)i, (int)i);
    for (int trial = 0; trial < trials; ++trial) {
        BoundariedGraph ctx =
            detail::random_context((int)g1.boundary.size(), context_size, spec.t, rng);
        auto outcome = [&](const BoundariedGraph& piece) {
            BoundariedGraph glued = glue(ctx, piece, identity);
            const Graph& whole = glued.graph;
            return treewidth_less_than(whole, spec.t) && spec.accepts(whole);
        };
        ++verdict.trials_run;
        if (outcome(g1) != outcome(g2)) {
            verdict.equivalent = false;
            verdict.counterexample = ctx;
            return verdict;
        }
    }
    return verdict;
}

// Bounded deterministic reservoir of compress merges, each with enough
// context (host graph, plugin) to re-test the merged pair later.
struct SampledMerge {
    Graph host;
    std::string problem;
    MergeRecord record;
};

struct MergeSampler {
    std::size_t capacity = 1000;
    Rng rng{987654321};
    long long seen = 0;
    std::vector<SampledMerge> samples;

    void offer(const Graph& g, const std::string& problem, const MergeRecord& rec) {
        ++seen;
        if (samples.size() < capacity) {
            samples.push_back({g, problem, rec});
            return;
        }
        std::uint64_t j = rng.below((std::uint64_t)seen);
        if (j < capacity)
            samples[(std::size_t)j] = {g, problem, rec};
    }
};

struct CrossCheckOptions {
    std::uint64_t seed = 1;
    int instances = 20;     // per graph family
    bool with_mod = true;   // also run each plugin with @mod2
    bool debug_checks = false;
    MergeLog* merge_log = nullptr;
    MergeSampler* merge_sampler = nullptr;
};

struct CrossCheckReport {
    int checks = 0;
    int failures = 0;
    std::vector<std::string> lines; // one JSON object per line

    bool all_passed() const { return failures == 0; }
};

// Random instances from several families, solved both by the table dynamic
// program (over two different decompositions) and by subset enumeration;
// any weight disagreement is a failure line with the reproduction seed.
inline CrossCheckReport cross_check_suite(const CrossCheckOptions& opt = {}) {
    CrossCheckReport report;
    Rng master(opt.seed);
    std::vector<std::string> families{"gnp02", "gnp04", "gnp06", "chordal", "interval"};
    std::vector<std::string> plugins = problem_names();
    if (opt.with_mod) {
        std::vector<std::string> extended = plugins;
        for (const auto& p : plugins)
            extended.push_back(p + "@mod2=0");
        plugins = std::move(extended);
    }
    for (const std::string& family : families) {
        for (int i = 0; i < opt.instances; ++i) {
            Rng rng = master.split();
            std::uint64_t instance_seed = rng.next();
            Rng gen(instance_seed);
            int n = 4 + (int)gen.below(9); // 4..12
            Graph g(0, {});
            if (family == "gnp02")
                g = gen_gnp(n, 0.2, gen);
            else if (family == "gnp04")
                g = gen_gnp(n, 0.4, gen);
            else if (family == "gnp06")
                g = gen_gnp(n, 0.6, gen);
            else if (family == "chordal")
                g = gen_chordal(n, gen);
            else
                g = interval_graph(gen_intervals(n, gen));
            g = g.with_weights(gen_weights(n, gen));

            ExactTreeAlphaResult exact = exact_tree_alpha(g);
            SeparatorBuildResult greedy = build_from_separators(
                g,
                [](const Graph& sub, const std::vector<int>&) {
                    return greedy_clique_separator(sub, Rational(2, 3));
                },
                Rational(2, 3));
            int greedy_k = alpha_of_decomposition(g, greedy.td);

            for (const std::string& plugin : plugins) {
                ProblemSpec spec = problem_by_name(plugin);
                std::optional<Solution> expected = brute_force_solve(g, spec);
                for (int which = 0; which < 2; ++which) {
                    const TreeDecomposition& td = which == 0 ? exact.td : greedy.td;
                    int k = which == 0 ? std::max(1, exact.k) : std::max(1, greedy_k);
                    SolveOptions sopt;
                    sopt.debug_checks = opt.debug_checks;
                    MergeLog local_log;
                    if (opt.merge_log || opt.merge_sampler)
                        sopt.merge_log = &local_log;
                    ++report.checks;
                    bool ok;
                    std::string detail;
                    try {
                        SolveResult got = solve(g, td, spec, k, sopt);
                        if (opt.merge_sampler)
                            for (const MergeRecord& rec : local_log)
                                opt.merge_sampler->offer(g, plugin, rec);
                        if (opt.merge_log)
                            for (MergeRecord& rec : local_log)
                                opt.merge_log->push_back(std::move(rec));
                        if (expected.has_value() != got.solution.has_value()) {
                            ok = false;
                            detail = "feasibility mismatch";
                        } else if (expected &&
                                   !(expected->weight == got.solution->weight)) {
                            ok = false;
                            detail = "weight " + got.solution->weight.str() +
                                     " expected " + expected->weight.str();
                        } else {
                            ok = true;
                        }
                    } catch (const std::exception& e) {
                        ok = false;
                        detail = std::string("exception: ") + e.what();
                    }
                    if (!ok)
                        ++report.failures;
                    std::ostringstream line;
                    line << "{\"family\":\"" << family << "\",\"seed\":" << instance_seed
                         << ",\"n\":" << n << ",\"problem\":\"" << plugin
                         << "\",\"decomposition\":\""
                         << (which == 0 ? "exact" : "separator-greedy")
                         << "\",\"k\":" << k << ",\"pass\":" << (ok ? "true" : "false");
                    if (!ok)
                        line << ",\"detail\":\"" << detail << "\"";
                    line << "}";
                    report.lines.push_back(line.str());
                }
            }
        }
    }
    return report;
}

} // namespace tia
