#pragma once

// Independent oracles for the test suite: plain subset/permutation
// enumeration, no shared code with the solver paths they check.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "tia/boundaried.hpp"
#include "tia/graph.hpp"

namespace tia_test {

inline tia::Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return tia::Graph(n, edges);
}

inline tia::Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < a; ++u)
        for (int v = 0; v < b; ++v)
            edges.emplace_back(u, a + v);
    return tia::Graph(a + b, edges);
}

inline tia::Graph petersen_graph() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);         // outer cycle
        edges.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
        edges.emplace_back(i, 5 + i);               // spokes
    }
    return tia::Graph(10, edges);
}

// Independence number by subset enumeration; |s| <= 20.
inline int brute_independence(const tia::Graph& g, const tia::VertexSet& s) {
    const auto& ids = s.ids();
    int k = (int)ids.size();
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        bool independent = true;
        for (int i = 0; i < k && independent; ++i)
            for (int j = i + 1; j < k && independent; ++j)
                if ((mask >> i & 1) && (mask >> j & 1) &&
                    g.adjacent(ids[(std::size_t)i], ids[(std::size_t)j]))
                    independent = false;
        if (independent)
            best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

// Back-degree of v when the vertices in `eliminated` are gone: neighbors of
// the component of v within eliminated u {v}.
inline int back_degree(const tia::Graph& g, const std::vector<char>& eliminated,
                       int v) {
    int n = g.vertex_count();
    std::vector<char> in_comp((std::size_t)n, 0);
    std::vector<int> stack{v};
    in_comp[(std::size_t)v] = 1;
    std::vector<char> border((std::size_t)n, 0);
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(x)) {
            if (in_comp[(std::size_t)u])
                continue;
            if (eliminated[(std::size_t)u]) {
                in_comp[(std::size_t)u] = 1;
                stack.push_back(u);
            } else {
                border[(std::size_t)u] = 1;
            }
        }
    }
    int d = 0;
    for (int u = 0; u < n; ++u)
        if (border[(std::size_t)u] && u != v)
            ++d;
    return d;
}

// Exact treewidth by minimizing the maximum back-degree over all
// elimination orders; n <= 9.
inline int brute_treewidth(const tia::Graph& g) {
    int n = g.vertex_count();
    if (n == 0)
        return -1;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    int best = n - 1;
    do {
        std::vector<char> eliminated((std::size_t)n, 0);
        int widest = 0;
        for (int v : order) {
            widest = std::max(widest, back_degree(g, eliminated, v));
            eliminated[(std::size_t)v] = 1;
            if (widest >= best)
                break;
        }
        best = std::min(best, widest);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

// Exact tree-independence number over all elimination orders; n <= 6.
inline int brute_tree_alpha(const tia::Graph& g) {
    int n = g.vertex_count();
    if (n == 0)
        return 0;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    int best = n;
    do {
        std::vector<char> eliminated((std::size_t)n, 0);
        int widest = 0;
        for (int v : order) {
            std::vector<int> bag{v};
            std::vector<char> in_comp((std::size_t)n, 0);
            std::vector<int> stack{v};
            in_comp[(std::size_t)v] = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int u : g.neighbors(x)) {
                    if (in_comp[(std::size_t)u])
                        continue;
                    in_comp[(std::size_t)u] = 1;
                    if (eliminated[(std::size_t)u])
                        stack.push_back(u);
                    else
                        bag.push_back(u);
                }
            }
            widest = std::max(widest,
                              brute_independence(g, tia::VertexSet(std::move(bag))));
            eliminated[(std::size_t)v] = 1;
        }
        best = std::min(best, widest);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

// Canonical string of a boundaried graph: adjacency under the best
// permutation of the non-boundary vertices (boundary positions pinned).
// Brute force, for graphs up to ~8 vertices.
inline std::string boundaried_canonical(const tia::BoundariedGraph& bg) {
    int n = bg.graph.vertex_count();
    std::vector<int> fixed((std::size_t)n, -1);
    for (std::size_t i = 0; i < bg.boundary.size(); ++i)
        fixed[(std::size_t)bg.boundary[i]] = (int)i;
    std::vector<int> free_vertices;
    for (int v = 0; v < n; ++v)
        if (fixed[(std::size_t)v] == -1)
            free_vertices.push_back(v);
    std::sort(free_vertices.begin(), free_vertices.end());
    std::string best;
    std::vector<int> position((std::size_t)n);
    do {
        for (int v = 0; v < n; ++v)
            if (fixed[(std::size_t)v] != -1)
                position[(std::size_t)v] = fixed[(std::size_t)v];
        for (std::size_t i = 0; i < free_vertices.size(); ++i)
            position[(std::size_t)free_vertices[i]] =
                (int)bg.boundary.size() + (int)i;
        std::string s = std::to_string(n) + ":" +
                        std::to_string(bg.boundary.size()) + ":";
        std::vector<std::string> rows((std::size_t)n);
        for (int u = 0; u < n; ++u)
            rows[(std::size_t)u].assign((std::size_t)n, '0');
        for (auto [u, v] : bg.graph.edge_list()) {
            rows[(std::size_t)position[(std::size_t)u]]
                [(std::size_t)position[(std::size_t)v]] = '1';
            rows[(std::size_t)position[(std::size_t)v]]
                [(std::size_t)position[(std::size_t)u]] = '1';
        }
        for (const auto& r : rows)
            s += r + ";";
        if (best.empty() || s < best)
            best = s;
    } while (std::next_permutation(free_vertices.begin(), free_vertices.end()));
    return best;
}

} // namespace tia_test
