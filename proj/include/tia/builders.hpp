#pragma once

#include <algorithm>
#include <functional>
#include <list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tia/decomposition.hpp"
#include "tia/errors.hpp"
#include "tia/graph.hpp"
#include "tia/rational.hpp"

namespace tia {

// A family of cliques whose removal leaves every component with at most
// beta * n vertices.
struct CliqueSeparator {
    std::vector<VertexSet> cliques;
    Rational beta;

    VertexSet vertex_union() const {
        VertexSet u;
        for (const auto& c : cliques)
            u = u.unite(c);
        return u;
    }
};

struct ChordalityResult {
    bool chordal = false;
    std::vector<int> elimination_order; // perfect elimination order if chordal
    std::vector<int> hole;              // a chordless cycle (>= 4) otherwise
};

namespace detail {

// Lexicographic BFS by partition refinement; returns the visit order.
inline std::vector<int> lex_bfs(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> order;
    order.reserve((std::size_t)n);
    std::list<std::vector<int>> buckets;
    std::vector<int> initial(n);
    for (int v = 0; v < n; ++v)
        initial[(std::size_t)v] = v;
    if (n > 0)
        buckets.push_back(std::move(initial));
    std::vector<char> visited((std::size_t)n, 0);
    while (!buckets.empty()) {
        auto& front = buckets.front();
        int v = front.front();
        front.erase(front.begin());
        if (front.empty())
            buckets.pop_front();
        visited[(std::size_t)v] = 1;
        order.push_back(v);
        std::vector<char> is_nb((std::size_t)n, 0);
        for (int u : g.neighbors(v))
            is_nb[(std::size_t)u] = 1;
        for (auto it = buckets.begin(); it != buckets.end(); ++it) {
            std::vector<int> in, out;
            for (int u : *it)
                (is_nb[(std::size_t)u] ? in : out).push_back(u);
            if (in.empty() || out.empty())
                continue;
            *it = std::move(out);
            buckets.insert(it, std::move(in));
        }
    }
    return order;
}

// Searches for an induced cycle of length >= 4 through a vertex v with two
// non-adjacent neighbors u, w: a shortest u-w path avoiding N[v] closes one.
inline std::vector<int> find_hole(const Graph& g) {
    int n = g.vertex_count();
    for (int v = 0; v < n; ++v) {
        const auto& nb = g.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                int u = nb[i], w = nb[j];
                if (g.adjacent(u, w))
                    continue;
                std::vector<int> prev((std::size_t)n, -2);
                prev[(std::size_t)v] = -3; // blocked
                for (int x : nb)
                    if (x != u && x != w)
                        prev[(std::size_t)x] = -3;
                std::vector<int> queue{u};
                prev[(std::size_t)u] = -1;
                std::size_t head = 0;
                while (head < queue.size() && prev[(std::size_t)w] == -2)
                    for (int x : g.neighbors(queue[head++]))
                        if (prev[(std::size_t)x] == -2) {
                            prev[(std::size_t)x] = queue[head - 1];
                            queue.push_back(x);
                        }
                if (prev[(std::size_t)w] == -2 || prev[(std::size_t)w] == -3)
                    continue;
                std::vector<int> cycle{v};
                for (int x = w; x != -1; x = prev[(std::size_t)x])
                    cycle.push_back(x);
                return cycle;
            }
        }
    }
    return {};
}

} // namespace detail

// Lex-BFS plus the classic perfect-elimination-order check; produces a
// chordless-cycle witness on failure.
inline ChordalityResult recognize_chordal(const Graph& g) {
    int n = g.vertex_count();
    ChordalityResult result;
    std::vector<int> visit = detail::lex_bfs(g);
    std::vector<int> pos((std::size_t)n, -1);
    for (int i = 0; i < n; ++i)
        pos[(std::size_t)visit[(std::size_t)i]] = i;
    // elimination order = reverse of the visit order
    bool ok = true;
    for (int i = n - 1; i >= 0 && ok; --i) {
        int v = visit[(std::size_t)i];
        // neighbors visited before v, latest one first
        int parent = -1;
        for (int u : g.neighbors(v)) {
            if (pos[(std::size_t)u] >= i)
                continue;
            if (parent == -1 || pos[(std::size_t)u] > pos[(std::size_t)parent])
                parent = u;
        }
        if (parent == -1)
            continue;
        for (int u : g.neighbors(v)) {
            if (pos[(std::size_t)u] >= i || u == parent)
                continue;
            if (!g.adjacent(parent, u)) {
                ok = false;
                break;
            }
        }
    }
    if (ok) {
        result.chordal = true;
        result.elimination_order.assign(visit.rbegin(), visit.rend());
    } else {
        result.hole = detail::find_hole(g);
    }
    return result;
}

// Clique tree of a chordal graph: eliminate along a perfect elimination
// order; the bag of v is {v} plus its later-ordered neighbors.
inline TreeDecomposition clique_tree_chordal(const Graph& g) {
    ChordalityResult rec = recognize_chordal(g);
    if (!rec.chordal) {
        std::string witness;
        for (int v : rec.hole)
            witness += (witness.empty() ? "" : "-") + std::to_string(v);
        throw InputError("clique_tree_chordal: graph is not chordal; chordless cycle " +
                         witness);
    }
    if (g.vertex_count() == 0)
        return TreeDecomposition::single_bag(VertexSet());
    return decomposition_from_elimination(g, rec.elimination_order);
}

// Heuristic balanced clique separator: repeatedly split any oversized
// component at a BFS layer, shrink the separator by a removal pass, then
// cover it greedily with maximal cliques. Always valid, no size guarantee.
inline CliqueSeparator greedy_clique_separator(const Graph& g, const Rational& beta) {
    if (beta < Rational(1, 2) || !(beta < Rational(1)))
        throw InputError("separator balance must satisfy 1/2 <= beta < 1");
    int n = g.vertex_count();
    CliqueSeparator result;
    result.beta = beta;
    if (n == 0)
        return result;
    auto small_enough = [&](int size) { return !(beta * Rational(n) < Rational(size)); };

    VertexSet separator;
    auto oversized_component = [&]() -> std::optional<VertexSet> {
        InducedGraph rest = induced_subgraph(g, g.all_vertices().minus(separator));
        for (const VertexSet& comp : components(rest.graph)) {
            if (!small_enough(comp.size())) {
                std::vector<int> orig;
                for (int v : comp)
                    orig.push_back(rest.original_ids[(std::size_t)v]);
                return VertexSet(std::move(orig));
            }
        }
        return std::nullopt;
    };

    while (auto big = oversized_component()) {
        InducedGraph sub = induced_subgraph(g, *big);
        int sz = sub.graph.vertex_count();
        // BFS layers from the smallest vertex
        std::vector<int> layer((std::size_t)sz, -1);
        std::vector<int> queue{0};
        layer[0] = 0;
        std::size_t head = 0;
        int layers = 1;
        while (head < queue.size()) {
            int v = queue[head++];
            for (int u : sub.graph.neighbors(v))
                if (layer[(std::size_t)u] == -1) {
                    layer[(std::size_t)u] = layer[(std::size_t)v] + 1;
                    layers = std::max(layers, layer[(std::size_t)u] + 1);
                    queue.push_back(u);
                }
        }
        std::vector<int> layer_size((std::size_t)layers, 0);
        for (int v = 0; v < sz; ++v)
            ++layer_size[(std::size_t)layer[(std::size_t)v]];
        // feasible layers leave both sides globally small; pick the thinnest
        int best_layer = -1;
        int prefix = 0;
        for (int i = 0; i < layers; ++i) {
            int suffix = sz - prefix - layer_size[(std::size_t)i];
            if (small_enough(prefix) && small_enough(suffix) &&
                (best_layer == -1 ||
                 layer_size[(std::size_t)i] < layer_size[(std::size_t)best_layer]))
                best_layer = i;
            prefix += layer_size[(std::size_t)i];
        }
        if (best_layer == -1) {
            // median layer is always feasible for beta >= 1/2
            int median = sz / 2, seen = 0;
            for (int i = 0; i < layers; ++i) {
                seen += layer_size[(std::size_t)i];
                if (seen > median) {
                    best_layer = i;
                    break;
                }
            }
        }
        std::vector<int> picked;
        for (int v = 0; v < sz; ++v)
            if (layer[(std::size_t)v] == best_layer)
                picked.push_back(sub.original_ids[(std::size_t)v]);
        separator = separator.unite(VertexSet(std::move(picked)));
    }

    // removal pass: drop separator vertices that are not needed for balance
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (int v : separator.ids()) {
            VertexSet narrowed = separator.without(v);
            InducedGraph rest = induced_subgraph(g, g.all_vertices().minus(narrowed));
            bool fine = true;
            for (const VertexSet& comp : components(rest.graph))
                if (!small_enough(comp.size())) {
                    fine = false;
                    break;
                }
            if (fine) {
                separator = narrowed;
                shrunk = true;
                break;
            }
        }
    }

    // greedy cover by maximal cliques within the separator
    VertexSet left = separator;
    while (!left.empty()) {
        int seed = left[0];
        std::vector<int> clique{seed};
        for (int v : left.ids()) {
            if (v == seed)
                continue;
            bool all = true;
            for (int c : clique)
                if (!g.adjacent(c, v)) {
                    all = false;
                    break;
                }
            if (all)
                clique.push_back(v);
        }
        VertexSet cs(std::move(clique));
        result.cliques.push_back(cs);
        left = left.minus(cs);
    }
    return result;
}

inline Graph interval_graph(const std::vector<std::pair<Rational, Rational>>& ivs) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < ivs.size(); ++i)
        for (std::size_t j = i + 1; j < ivs.size(); ++j) {
            bool overlap = !(ivs[i].second < ivs[j].first) &&
                           !(ivs[j].second < ivs[i].first);
            if (overlap)
                edges.emplace_back((int)i, (int)j);
        }
    return Graph((int)ivs.size(), edges);
}

// One stabbing point always yields a balanced one-clique separator of an
// interval graph. Among the feasible candidate points we keep the one
// stabbing the most intervals.
inline CliqueSeparator
interval_clique_separator(const std::vector<std::pair<Rational, Rational>>& ivs,
                          const Rational& beta) {
    if (beta < Rational(1, 2) || !(beta < Rational(1)))
        throw InputError("separator balance must satisfy 1/2 <= beta < 1");
    CliqueSeparator result;
    result.beta = beta;
    int n = (int)ivs.size();
    if (n == 0)
        return result;
    std::vector<Rational> candidates;
    for (const auto& [lo, hi] : ivs) {
        candidates.push_back(lo);
        candidates.push_back(hi);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    Rational cap = beta * Rational(n);
    int best_stab = -1;
    Rational best_point(0);
    for (const Rational& p : candidates) {
        int left = 0, right = 0, stab = 0;
        for (const auto& [lo, hi] : ivs) {
            if (hi < p)
                ++left;
            else if (p < lo)
                ++right;
            else
                ++stab;
        }
        if (Rational(left) <= cap && Rational(right) <= cap && stab > best_stab) {
            best_stab = stab;
            best_point = p;
        }
    }
    if (best_stab <= 0)
        throw ContractError("interval separator: no feasible stabbing point");
    std::vector<int> clique;
    for (int i = 0; i < n; ++i)
        if (!(ivs[(std::size_t)i].second < best_point) &&
            !(best_point < ivs[(std::size_t)i].first))
            clique.push_back(i);
    result.cliques.push_back(VertexSet(std::move(clique)));
    return result;
}

// Finder contract: given an induced subgraph (with its id map back into the
// full graph), return a valid beta-balanced clique separator of it, with
// cliques in the subgraph's local ids.
using SeparatorFinder =
    std::function<CliqueSeparator(const Graph& sub, const std::vector<int>& original_ids)>;

struct SeparatorBuildResult {
    TreeDecomposition td;
    // per node: number of cliques stacked along the root path that cover the
    // bag; an upper bound on the bag's independence number
    std::vector<int> bag_clique_bound;
};

// Standard separator recursion: the bag of a node is the separator union plus
// the inherited interface; children recurse into components carrying the full
// parent interface plus the separator vertices adjacent to the component.
inline SeparatorBuildResult build_from_separators(const Graph& g,
                                                  const SeparatorFinder& finder,
                                                  const Rational& beta) {
    if (beta < Rational(1, 2) || !(beta < Rational(1)))
        throw InputError("separator balance must satisfy 1/2 <= beta < 1");
    TreeDecomposition::Builder out;
    std::vector<int> bounds;
    auto add_node = [&](VertexSet bag, int bound) {
        int id = out.add(std::move(bag));
        bounds.push_back(bound);
        return id;
    };

    std::function<int(const VertexSet&, const VertexSet&, int)> build =
        [&](const VertexSet& part, const VertexSet& interface, int stacked) -> int {
        if (part.size() == 1)
            return add_node(part.unite(interface), stacked + 1);
        InducedGraph sub = induced_subgraph(g, part);
        CliqueSeparator sep = finder(sub.graph, sub.original_ids);
        for (const VertexSet& clique : sep.cliques) {
            for (int v : clique)
                if (v < 0 || v >= sub.graph.vertex_count())
                    throw ContractError("separator clique " + clique.str() +
                                        " leaves the component");
            for (int a : clique)
                for (int b : clique)
                    if (a < b && !sub.graph.adjacent(a, b))
                        throw ContractError("separator set " + clique.str() +
                                            " is not a clique");
        }
        VertexSet sep_local = sep.vertex_union();
        InducedGraph rest =
            induced_subgraph(sub.graph, sub.graph.all_vertices().minus(sep_local));
        Rational cap = beta * Rational(part.size());
        std::vector<VertexSet> comps = components(rest.graph);
        for (const VertexSet& comp : comps)
            if (cap < Rational(comp.size()))
                throw ContractError("separator is not " + beta.str() +
                                    "-balanced: component of size " +
                                    std::to_string(comp.size()) + " out of " +
                                    std::to_string(part.size()));
        std::vector<int> sep_global;
        for (int v : sep_local)
            sep_global.push_back(sub.original_ids[(std::size_t)v]);
        VertexSet sep_set(std::move(sep_global));
        int stacked_here = stacked + (int)sep.cliques.size();
        int node = add_node(sep_set.unite(interface), stacked_here);
        for (const VertexSet& comp : comps) {
            std::vector<int> comp_global;
            for (int v : comp)
                comp_global.push_back(
                    sub.original_ids[(std::size_t)rest.original_ids[(std::size_t)v]]);
            VertexSet comp_set(std::move(comp_global));
            std::vector<int> touching;
            for (int s : sep_set) {
                for (int u : g.neighbors(s))
                    if (comp_set.contains(u)) {
                        touching.push_back(s);
                        break;
                    }
            }
            VertexSet child_interface = interface.unite(VertexSet(std::move(touching)));
            int child = build(comp_set, child_interface, stacked_here);
            out.link(node, child);
        }
        return node;
    };

    std::vector<VertexSet> top = components(g);
    if (top.empty()) {
        int id = add_node(VertexSet(), 0);
        TreeDecomposition td = out.finish(DecompositionKind::Raw, id);
        return SeparatorBuildResult{std::move(td), std::move(bounds)};
    }
    std::vector<int> roots;
    for (const VertexSet& comp : top)
        roots.push_back(build(comp, VertexSet(), 0));
    for (std::size_t i = 1; i < roots.size(); ++i)
        out.link(roots[i - 1], roots[i]);
    TreeDecomposition td = out.finish(DecompositionKind::Raw, roots[0]);
    return SeparatorBuildResult{std::move(td), std::move(bounds)};
}

struct ExactTreeAlphaResult {
    int k = 0;
    TreeDecomposition td;
};

inline constexpr int kExactTreeAlphaCap = 12;

// Exact tree-independence number by subset DP over elimination orders,
// minimizing the maximum independence number over elimination bags. Oracle
// grade: capped at 12 vertices.
inline ExactTreeAlphaResult exact_tree_alpha(const Graph& g) {
    int n = g.vertex_count();
    if (n > kExactTreeAlphaCap)
        throw ResourceError("exact_tree_alpha: graph of size " + std::to_string(n) +
                            " exceeds cap " + std::to_string(kExactTreeAlphaCap));
    if (n == 0)
        return {0, TreeDecomposition::single_bag(VertexSet())};
    std::vector<std::uint32_t> adj((std::size_t)n, 0);
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v))
            adj[(std::size_t)v] |= 1u << u;
    std::size_t states = (std::size_t)1 << n;
    std::vector<std::uint8_t> best(states, 0);
    std::vector<std::int8_t> choice(states, -1);
    auto bag_alpha = [&](std::uint32_t eliminated, int v) {
        std::uint32_t border = detail::elimination_border(adj, eliminated, v);
        std::vector<int> bag{v};
        std::uint32_t it = border;
        while (it) {
            bag.push_back(__builtin_ctz(it));
            it &= it - 1;
        }
        return (std::uint8_t)independence_number(g, VertexSet(std::move(bag)),
                                                 kDefaultIndependenceCap);
    };
    for (std::uint32_t s = 1; s < states; ++s) {
        std::uint8_t value = 255;
        std::int8_t pick = -1;
        std::uint32_t it = s;
        while (it) {
            int v = __builtin_ctz(it);
            it &= it - 1;
            std::uint32_t rest = s & ~(1u << v);
            std::uint8_t cost = std::max(best[rest], bag_alpha(rest, v));
            if (cost < value) {
                value = cost;
                pick = (std::int8_t)v;
            }
        }
        best[s] = value;
        choice[s] = pick;
    }
    std::uint32_t full = (std::uint32_t)(states - 1);
    std::vector<int> order((std::size_t)n);
    std::uint32_t s = full;
    for (int pos = n - 1; pos >= 0; --pos) {
        int v = choice[s];
        order[(std::size_t)pos] = v;
        s &= ~(1u << v);
    }
    return {(int)best[full], decomposition_from_elimination(g, order)};
}

} // namespace tia
