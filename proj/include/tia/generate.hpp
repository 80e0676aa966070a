#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tia/builders.hpp"
#include "tia/decomposition.hpp"
#include "tia/errors.hpp"
#include "tia/graph.hpp"
#include "tia/rational.hpp"
#include "tia/rng.hpp"

namespace tia {

inline Graph gen_gnp(int n, double p, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p))
                edges.emplace_back(u, v);
    return Graph(n, edges);
}

// Chordal by construction: each new vertex attaches to a random subset of a
// previously created bag, so the reverse insertion order is a perfect
// elimination order.
inline Graph gen_chordal(int n, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> bags;
    for (int v = 0; v < n; ++v) {
        if (bags.empty()) {
            bags.push_back({v});
            continue;
        }
        const auto& base = bags[(std::size_t)rng.below(bags.size())];
        std::vector<int> attach;
        for (int u : base)
            if (rng.chance(0.6))
                attach.push_back(u);
        if (attach.empty() && !base.empty() && rng.chance(0.8))
            attach.push_back(base[(std::size_t)rng.below(base.size())]);
        for (int u : attach)
            edges.emplace_back(u, v);
        attach.push_back(v);
        bags.push_back(std::move(attach));
    }
    return Graph(n, edges);
}

inline std::vector<std::pair<Rational, Rational>> gen_intervals(int n, Rng& rng) {
    std::vector<std::pair<Rational, Rational>> out;
    out.reserve((std::size_t)n);
    long long span = std::max(4LL * n, 8LL);
    for (int i = 0; i < n; ++i) {
        long long lo = (long long)rng.below((std::uint64_t)span);
        long long len = 1 + (long long)rng.below((std::uint64_t)(span / 4));
        out.emplace_back(Rational(lo), Rational(lo + len));
    }
    return out;
}

inline Graph gen_grid(int rows, int cols) {
    std::vector<std::pair<int, int>> edges;
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols)
                edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows)
                edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(rows * cols, edges);
}

inline Graph gen_cycle(int n) {
    if (n < 3)
        throw InputError("cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return Graph(n, edges);
}

inline Graph gen_path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v)
        edges.emplace_back(v, v + 1);
    return Graph(n, edges);
}

// Random positive weights with small numerators/denominators.
inline std::vector<Rational> gen_weights(int n, Rng& rng) {
    std::vector<Rational> w;
    w.reserve((std::size_t)n);
    for (int i = 0; i < n; ++i)
        w.push_back(Rational(1 + (long long)rng.below(12), 1 + (long long)rng.below(3)));
    return w;
}

// Fan decomposition of a cycle: bags {v0, vi, vi+1}, width 2, independence
// number 2. The standard fixed-k instance family for scaling runs.
inline TreeDecomposition fan_decomposition_of_cycle(int n) {
    if (n < 3)
        throw InputError("cycle needs at least 3 vertices");
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i + 1 < n; ++i) {
        bags.push_back(VertexSet({0, i, i + 1}));
        if (i > 1)
            edges.emplace_back((int)bags.size() - 2, (int)bags.size() - 1);
    }
    return TreeDecomposition(std::move(bags), std::move(edges));
}

} // namespace tia
