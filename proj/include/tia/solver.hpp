#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tia/decomposition.hpp"
#include "tia/errors.hpp"
#include "tia/graph.hpp"
#include "tia/problems.hpp"
#include "tia/rep_family.hpp"
#include "tia/signature.hpp"
#include "tia/test_hooks.hpp"

namespace tia {

struct Solution {
    VertexSet set;
    Rational weight;
    bool treewidth_ok = false; // certificate: re-checked on extraction
    bool accepts_ok = false;
};

struct SolveStats {
    long long nodes = 0;
    long long keys = 0;
    std::size_t max_family_size = 0;
    std::size_t distinct_signatures = 0;
    double wall_ms = 0;
};

struct SolveOptions {
    int threads = 1;
    bool debug_checks = false;       // re-verify table invariants per node
    int independence_cap = 256;      // cap for the input-decomposition alpha check
    MergeLog* merge_log = nullptr;   // compress merges, deterministic order
    bool collect_signatures = false; // keep one sample per canonical signature
};

struct SignatureDumpEntry {
    Signature sample;
    long long count = 0;
};

struct SolveResult {
    std::string problem;
    int k = 0;
    int ell = 0;
    int t = 0;
    std::optional<Solution> solution; // empty = infeasible
    SolveStats stats;
    std::map<std::string, SignatureDumpEntry> signatures; // when collected
};

namespace detail {

// All B in the bag with |B| <= ell and tw(g[B]) < t. Monotone: an induced
// subgraph of a small-treewidth graph stays small, so the DFS prunes whole
// suffixes once a subset fails.
inline std::vector<VertexSet> enumerate_keys(const VertexSet& bag, int ell,
                                             TreewidthOracle& tw) {
    std::vector<VertexSet> out;
    std::vector<int> chosen;
    const auto& ids = bag.ids();
    std::function<void(std::size_t, const VertexSet&)> rec =
        [&](std::size_t next, const VertexSet& cur) {
            out.push_back(cur);
            if ((int)cur.size() >= ell)
                return;
            for (std::size_t i = next; i < ids.size(); ++i) {
                VertexSet ext = cur.with(ids[i]);
                if (tw.less_than(ext))
                    rec(i + 1, ext);
            }
        };
    rec(0, VertexSet());
    return out;
}

struct NodeTable {
    std::map<VertexSet, Family> families;
};

} // namespace detail

// Bottom-up dynamic program over a nice tree decomposition whose per-bag
// independence number is at most k. Tables map (node, boundary B) to a family
// of feasible partial solutions, compressed to max-weight representatives per
// canonical signature at forget and join nodes.
inline SolveResult solve(const Graph& g, const TreeDecomposition& td,
                         const ProblemSpec& spec, int k,
                         const SolveOptions& opt = {}) {
    auto started = std::chrono::steady_clock::now();
    if (k < 1)
        throw InputError("solve: k must be at least 1");
    ValidateOptions vopt;
    vopt.independence_cap = opt.independence_cap;
    ValidationReport report = validate(g, td, vopt);
    if (!report.valid)
        throw InputError("solve: invalid decomposition\n" + report.summary());
    if (report.alpha > k)
        throw InputError("solve: decomposition independence number " +
                         std::to_string(report.alpha) + " exceeds k=" +
                         std::to_string(k));

    TreeDecomposition nice = td.kind() == DecompositionKind::Nice
                                 ? td
                                 : make_nice(g, td, vopt);
    const int ell = k * spec.t;

    SolveResult result;
    result.problem = spec.name;
    result.k = k;
    result.ell = ell;
    result.t = spec.t;

    TreewidthOracle tw(g, spec.t);
    SignatureKeyCache sig_cache;
    if (opt.collect_signatures)
        sig_cache.enable_collection();
    std::set<std::string> distinct;
    std::mutex distinct_mu;

    auto note_signatures = [&](const Family& family) {
        std::lock_guard<std::mutex> lock(distinct_mu);
        for (const auto& e : family)
            if (!e.signature_key.empty()) {
                distinct.insert(e.signature_key);
                if (opt.collect_signatures) {
                    auto& entry = result.signatures[e.signature_key];
                    entry.count += 1;
                }
            }
    };

    std::vector<std::optional<detail::NodeTable>> tables(
        (std::size_t)nice.node_count());

    auto process_keys = [&](const std::vector<VertexSet>& keys,
                            const std::function<std::pair<Family, MergeLog>(
                                const VertexSet&)>& handler,
                            detail::NodeTable& table) {
        std::vector<std::pair<Family, MergeLog>> results(keys.size());
        int workers = std::max(1, opt.threads);
        if (workers == 1 || keys.size() <= 1) {
            for (std::size_t i = 0; i < keys.size(); ++i)
                results[i] = handler(keys[i]);
        } else {
            std::atomic<std::size_t> cursor{0};
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&]() {
                    while (true) {
                        std::size_t i = cursor.fetch_add(1);
                        if (i >= keys.size())
                            return;
                        results[i] = handler(keys[i]);
                    }
                });
            for (auto& th : pool)
                th.join();
        }
        for (std::size_t i = 0; i < keys.size(); ++i) {
            note_signatures(results[i].first);
            result.stats.max_family_size =
                std::max(result.stats.max_family_size, results[i].first.size());
            if (opt.merge_log)
                for (auto& m : results[i].second)
                    opt.merge_log->push_back(std::move(m));
            table.families.emplace(keys[i], std::move(results[i].first));
        }
        result.stats.keys += (long long)keys.size();
    };

    for (int u : nice.post_order()) {
        const DecompositionNode& node = nice.node(u);
        detail::NodeTable table;
        switch (node.tag) {
        case NodeTag::Leaf: {
            table.families.emplace(VertexSet(), Family{make_entry(g, VertexSet())});
            break;
        }
        case NodeTag::Introduce: {
            int v = node.tagged_vertex;
            const detail::NodeTable& child = *tables[(std::size_t)node.children[0]];
            std::vector<VertexSet> keys = detail::enumerate_keys(node.bag, ell, tw);
            process_keys(
                keys,
                [&](const VertexSet& key) -> std::pair<Family, MergeLog> {
                    if (!key.contains(v)) {
                        auto it = child.families.find(key);
                        if (it == child.families.end())
                            throw ContractError("introduce: missing child key " +
                                                key.str());
                        return {it->second, {}};
                    }
                    auto it = child.families.find(key.without(v));
                    if (it == child.families.end())
                        throw ContractError("introduce: missing child key " +
                                            key.without(v).str());
                    Family out;
                    for (const FamilyEntry& e : it->second) {
                        VertexSet grown = e.set.with(v);
                        if (tw.less_than(grown))
                            out.push_back(make_entry(g, std::move(grown)));
                    }
                    return {std::move(out), {}};
                },
                table);
            if (opt.debug_checks) {
                // nothing outside the bag may neighbor the introduced vertex
                for (const auto& [key, family] : table.families)
                    for (const FamilyEntry& e : family)
                        if (e.set.contains(v))
                            for (int u2 : g.neighbors(v))
                                if (e.set.contains(u2) && !node.bag.contains(u2))
                                    throw ContractError(
                                        "introduce: neighbor outside bag");
            }
            break;
        }
        case NodeTag::Forget: {
            int v = node.tagged_vertex;
            const detail::NodeTable& child = *tables[(std::size_t)node.children[0]];
            std::vector<VertexSet> keys = detail::enumerate_keys(node.bag, ell, tw);
            process_keys(
                keys,
                [&](const VertexSet& key) -> std::pair<Family, MergeLog> {
                    Family merged;
                    auto lo = child.families.find(key);
                    if (lo != child.families.end())
                        merged.insert(merged.end(), lo->second.begin(),
                                      lo->second.end());
                    auto hi = child.families.find(key.with(v));
                    if (hi != child.families.end())
                        merged.insert(merged.end(), hi->second.begin(),
                                      hi->second.end());
                    MergeLog local;
                    Family out = compress(spec, g, key, std::move(merged), ell,
                                          &sig_cache, &local);
                    return {std::move(out), std::move(local)};
                },
                table);
            break;
        }
        case NodeTag::Join: {
            const detail::NodeTable& left = *tables[(std::size_t)node.children[0]];
            const detail::NodeTable& right = *tables[(std::size_t)node.children[1]];
            std::vector<VertexSet> keys = detail::enumerate_keys(node.bag, ell, tw);
            process_keys(
                keys,
                [&](const VertexSet& key) -> std::pair<Family, MergeLog> {
                    auto lf = left.families.find(key);
                    auto rf = right.families.find(key);
                    Family combined;
                    if (lf != left.families.end() && rf != right.families.end()) {
                        for (const FamilyEntry& a : lf->second)
                            for (const FamilyEntry& b : rf->second) {
                                VertexSet u2 = a.set.unite(b.set);
                                if (test_hooks::faults().skip_join_treewidth_check ||
                                    tw.less_than(u2))
                                    combined.push_back(make_entry(g, std::move(u2)));
                            }
                    }
                    MergeLog local;
                    Family out = compress(spec, g, key, std::move(combined), ell,
                                          &sig_cache, &local);
                    return {std::move(out), std::move(local)};
                },
                table);
            break;
        }
        default:
            throw ContractError("solve: untagged node in nice decomposition");
        }

        if (opt.debug_checks) {
            for (const auto& [key, family] : table.families)
                for (const FamilyEntry& e : family) {
                    if (!(e.set.intersect(node.bag) == key))
                        throw ContractError("table entry " + e.set.str() +
                                            " does not trace boundary " + key.str());
                    if (!tw.less_than(e.set))
                        throw ContractError("table entry " + e.set.str() +
                                            " is not feasible");
                }
        }

        for (int c : node.children)
            tables[(std::size_t)c].reset();
        tables[(std::size_t)u] = std::move(table);
        result.stats.nodes += 1;
    }

    // root extraction: the root bag is empty, so the only key is {}
    const detail::NodeTable& root_table = *tables[(std::size_t)nice.root()];
    auto it = root_table.families.find(VertexSet());
    std::optional<Solution> best;
    if (it != root_table.families.end()) {
        for (const FamilyEntry& e : it->second) {
            if (!spec.accepts(induced_subgraph(g, e.set).graph))
                continue;
            if (!best || best->weight < e.weight ||
                (best->weight == e.weight && e.set < best->set)) {
                Solution s;
                s.set = e.set;
                s.weight = e.weight;
                s.treewidth_ok = tw.less_than(e.set);
                s.accepts_ok = true;
                best = std::move(s);
            }
        }
    }
    result.solution = std::move(best);
    result.stats.distinct_signatures = distinct.size();
    if (opt.collect_signatures)
        for (const auto& [key, sample] : sig_cache.samples())
            result.signatures[key].sample = sample;
    result.stats.wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - started)
                               .count();
    return result;
}

} // namespace tia
