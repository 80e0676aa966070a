#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tia/errors.hpp"
#include "tia/graph.hpp"

namespace tia {

// A graph with an ordered tuple of distinguished boundary vertices. Order is
// part of the identity: position i of one boundaried graph corresponds to
// position i of another when they are composed.
struct BoundariedGraph {
    Graph graph;
    std::vector<int> boundary; // distinct vertex ids, order significant

    void check() const {
        std::set<int> seen;
        for (int v : boundary) {
            if (v < 0 || v >= graph.vertex_count())
                throw InputError("boundary vertex out of range: " + std::to_string(v));
            if (!seen.insert(v).second)
                throw InputError("duplicate boundary vertex " + std::to_string(v));
        }
    }
};

// Disjoint union with the matched boundary positions fused. `matching` pairs
// (position in a, position in b); unmatched positions stay distinct, and the
// result boundary lists a's positions first, then b's unmatched ones.
inline BoundariedGraph glue(const BoundariedGraph& a, const BoundariedGraph& b,
                            const std::vector<std::pair<int, int>>& matching) {
    a.check();
    b.check();
    std::vector<int> a_match((std::size_t)a.boundary.size(), -1);
    std::vector<int> b_match((std::size_t)b.boundary.size(), -1);
    for (auto [pa, pb] : matching) {
        if (pa < 0 || pa >= (int)a.boundary.size() || pb < 0 ||
            pb >= (int)b.boundary.size())
            throw InputError("glue: matching position out of range");
        if (a_match[(std::size_t)pa] != -1 || b_match[(std::size_t)pb] != -1)
            throw InputError("glue: position matched twice");
        a_match[(std::size_t)pa] = pb;
        b_match[(std::size_t)pb] = pa;
    }
    int na = a.graph.vertex_count();
    std::vector<int> b_map((std::size_t)b.graph.vertex_count(), -1);
    for (std::size_t pb = 0; pb < b.boundary.size(); ++pb)
        if (b_match[pb] != -1)
            b_map[(std::size_t)b.boundary[pb]] = a.boundary[(std::size_t)b_match[pb]];
    int next = na;
    for (int v = 0; v < b.graph.vertex_count(); ++v)
        if (b_map[(std::size_t)v] == -1)
            b_map[(std::size_t)v] = next++;

    std::vector<std::pair<int, int>> edges = a.graph.edge_list();
    for (auto [u, v] : b.graph.edge_list())
        edges.emplace_back(b_map[(std::size_t)u], b_map[(std::size_t)v]);
    std::vector<Rational> weights;
    weights.reserve((std::size_t)next);
    for (int v = 0; v < na; ++v)
        weights.push_back(a.graph.weight(v));
    weights.resize((std::size_t)next, Rational(1));
    for (int v = 0; v < b.graph.vertex_count(); ++v)
        if (b_map[(std::size_t)v] >= na)
            weights[(std::size_t)b_map[(std::size_t)v]] = b.graph.weight(v);

    BoundariedGraph out;
    out.graph = Graph(next, edges, std::move(weights)); // duplicate edges collapse
    out.boundary = a.boundary;
    for (std::size_t pb = 0; pb < b.boundary.size(); ++pb)
        if (b_match[pb] == -1)
            out.boundary.push_back(b_map[(std::size_t)b.boundary[pb]]);
    return out;
}

// Drops one boundary position; the graph is unchanged.
inline BoundariedGraph forget(const BoundariedGraph& g, int position) {
    if (position < 0 || position >= (int)g.boundary.size())
        throw InputError("forget: position out of range: " + std::to_string(position));
    BoundariedGraph out = g;
    out.boundary.erase(out.boundary.begin() + position);
    return out;
}

inline BoundariedGraph forget_all(const BoundariedGraph& g) {
    BoundariedGraph out = g;
    out.boundary.clear();
    return out;
}

} // namespace tia
