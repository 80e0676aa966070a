#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tia/decomposition.hpp"
#include "tia/errors.hpp"
#include "tia/graph.hpp"
#include "tia/problems.hpp"
#include "tia/test_hooks.hpp"

namespace tia {

// Summary of a boundaried solution piece (G[f], b): split a rooted binary
// width-<t decomposition of G[f] at the LCA closure Q of one marked node per
// boundary vertex; record the extended boundary B' = union of bags over Q as
// "slots" (boundary slots keep their identity, the rest are anonymous), the
// adjacency H among slots, and one fingerprint per piece of the split.
struct SignaturePiece {
    std::vector<int> slots; // ascending slot ids
    Fingerprint type;       // fingerprint with boundary ordered by slot id
};

struct Signature {
    int piece_count = 0;   // s
    int boundary_size = 0; // slots 0..boundary_size-1 are the named boundary
    int slot_count = 0;    // |B'|
    int lca_closure_size = 0;
    int ell = 1;
    std::vector<std::pair<int, int>> h_edges; // slot pairs, i<j, sorted
    std::vector<SignaturePiece> pieces;
};

struct CanonicalSignature {
    std::string bytes;

    friend bool operator==(const CanonicalSignature& a, const CanonicalSignature& b) {
        return a.bytes == b.bytes;
    }
    friend bool operator<(const CanonicalSignature& a, const CanonicalSignature& b) {
        return a.bytes < b.bytes;
    }
};

struct SignatureStats {
    std::atomic<long long> computed{0};
    std::atomic<long long> bound_checks{0};
};

inline SignatureStats& signature_stats() {
    static SignatureStats s;
    return s;
}

namespace detail {

// Inserts, above each node that must carry a mark, a same-bag leaf; marked
// nodes then have no children, which keeps the number of split pieces within
// 2*ell. Node ids are reassigned so the injected leaves come first and the
// smallest node id containing a boundary vertex is always such a leaf.
struct MarkablePieceTree {
    std::vector<VertexSet> bags;
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
    int root = -1;
};

inline MarkablePieceTree expand_for_marking(const TreeDecomposition& binary,
                                            const std::vector<int>& targets) {
    int n = binary.node_count();
    std::vector<char> expand((std::size_t)n, 0);
    for (int u : targets)
        expand[(std::size_t)u] = 1;

    // provisional build with star leaves recorded
    struct Prov {
        VertexSet bag;
        std::vector<int> children;
        bool star = false;
    };
    std::vector<Prov> prov;
    std::vector<int> stack;
    std::vector<int> top_of((std::size_t)n, -1); // node -> provisional id facing parent
    // post-order assembly
    for (int u : binary.post_order()) {
        std::vector<int> kids;
        for (int c : binary.node(u).children)
            kids.push_back(top_of[(std::size_t)c]);
        const VertexSet& bag = binary.node(u).bag;
        if (!expand[(std::size_t)u]) {
            prov.push_back({bag, kids, false});
            top_of[(std::size_t)u] = (int)prov.size() - 1;
        } else {
            prov.push_back({bag, kids, false}); // carrier keeps the children
            int carrier = (int)prov.size() - 1;
            prov.push_back({bag, {}, true}); // the markable leaf
            int star = (int)prov.size() - 1;
            prov.push_back({bag, {carrier, star}, false});
            top_of[(std::size_t)u] = (int)prov.size() - 1;
        }
    }
    int prov_root = top_of[(std::size_t)binary.root()];

    // renumber: star leaves first (by provisional id), then the rest preorder
    std::vector<int> order;
    for (std::size_t i = 0; i < prov.size(); ++i)
        if (prov[i].star)
            order.push_back((int)i);
    std::vector<int> pre{prov_root};
    std::size_t head = 0;
    while (head < pre.size()) {
        int u = pre[head++];
        for (int c : prov[(std::size_t)u].children)
            pre.push_back(c);
    }
    for (int u : pre)
        if (!prov[(std::size_t)u].star)
            order.push_back(u);
    std::vector<int> new_id(prov.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i)
        new_id[(std::size_t)order[i]] = (int)i;

    MarkablePieceTree out;
    out.bags.resize(prov.size());
    out.parent.assign(prov.size(), -1);
    out.children.resize(prov.size());
    for (std::size_t i = 0; i < prov.size(); ++i) {
        int id = new_id[i];
        out.bags[(std::size_t)id] = prov[i].bag;
        for (int c : prov[i].children) {
            out.children[(std::size_t)id].push_back(new_id[(std::size_t)c]);
            out.parent[(std::size_t)new_id[(std::size_t)c]] = id;
        }
    }
    for (auto& cs : out.children)
        std::sort(cs.begin(), cs.end());
    out.root = new_id[(std::size_t)prov_root];
    return out;
}

} // namespace detail

// Signature of the boundaried piece (g[f], b); `ell` is the boundary budget
// used for the structural bound checks (defaults to max(1,|b|)).
inline Signature compute_signature(const ProblemSpec& spec, const Graph& g,
                                   const VertexSet& f, const VertexSet& b,
                                   int ell = -1) {
    if (!b.subset_of(f))
        throw ContractError("compute_signature: boundary not inside the piece");
    if (ell < 0)
        ell = std::max(1, b.size());
    if (b.size() > ell)
        throw ContractError("compute_signature: boundary larger than ell");

    InducedGraph piece = induced_subgraph(g, f);
    auto order = elimination_order_with_width_below(piece.graph, spec.t);
    if (!order)
        throw ContractError("compute_signature: piece treewidth not below " +
                            std::to_string(spec.t));
    // local ids of the boundary; original_ids is ascending, so this is a merge
    std::vector<int> local_boundary;
    {
        std::size_t i = 0;
        for (int local = 0; local < (int)piece.original_ids.size(); ++local) {
            if (i < (std::size_t)b.size() && piece.original_ids[(std::size_t)local] == b[(int)i]) {
                local_boundary.push_back(local);
                ++i;
            }
        }
        if ((int)local_boundary.size() != b.size())
            throw ContractError("compute_signature: boundary not inside the piece");
    }

    TreeDecomposition binary =
        root_and_binarize(decomposition_from_elimination(piece.graph, *order), 0);

    // nodes that will carry marks: smallest node id containing each boundary vertex
    std::vector<int> targets;
    for (int v : local_boundary) {
        for (int u = 0; u < binary.node_count(); ++u) {
            if (binary.node(u).bag.contains(v)) {
                targets.push_back(u);
                break;
            }
        }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    detail::MarkablePieceTree tree = detail::expand_for_marking(binary, targets);
    int nodes = (int)tree.bags.size();

    std::vector<int> depth((std::size_t)nodes, 0);
    std::vector<int> preorder_index((std::size_t)nodes, 0);
    {
        std::vector<int> stack{tree.root};
        int idx = 0;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            preorder_index[(std::size_t)u] = idx++;
            const auto& kids = tree.children[(std::size_t)u];
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
                depth[(std::size_t)*it] = depth[(std::size_t)u] + 1;
                stack.push_back(*it);
            }
        }
    }
    auto lca = [&](int a, int c) {
        while (a != c) {
            if (depth[(std::size_t)a] < depth[(std::size_t)c])
                std::swap(a, c);
            a = tree.parent[(std::size_t)a];
        }
        return a;
    };

    // mark the smallest node id containing each boundary vertex
    std::vector<int> marked;
    for (int v : local_boundary) {
        for (int u = 0; u < nodes; ++u) {
            if (tree.bags[(std::size_t)u].contains(v)) {
                marked.push_back(u);
                break;
            }
        }
    }
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());

    std::vector<int> closure = marked;
    if (closure.empty()) {
        closure.push_back(tree.root); // empty-boundary degenerate case
    } else {
        std::sort(closure.begin(), closure.end(), [&](int a, int c) {
            return preorder_index[(std::size_t)a] < preorder_index[(std::size_t)c];
        });
        std::size_t original = closure.size();
        for (std::size_t i = 1; i < original; ++i)
            closure.push_back(lca(closure[i - 1], closure[i]));
        std::sort(closure.begin(), closure.end());
        closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    }
    std::vector<char> in_closure((std::size_t)nodes, 0);
    for (int u : closure)
        in_closure[(std::size_t)u] = 1;

    // extended boundary B'
    VertexSet extended;
    for (int u : closure)
        extended = extended.unite(tree.bags[(std::size_t)u]);

    // slots: boundary first (ascending vertex), then anonymous ones
    std::vector<int> slot_vertex; // slot id -> local vertex
    for (int v : local_boundary)
        slot_vertex.push_back(v);
    VertexSet boundary_set(local_boundary);
    for (int v : extended)
        if (!boundary_set.contains(v))
            slot_vertex.push_back(v);
    std::unordered_map<int, int> slot_of;
    for (std::size_t i = 0; i < slot_vertex.size(); ++i)
        slot_of[slot_vertex[i]] = (int)i;
    // boundary vertices outside B' still occupy their named slots; H records
    // the adjacency among all slots
    int slot_count = (int)slot_vertex.size();

    Signature sig;
    sig.boundary_size = (int)local_boundary.size();
    sig.slot_count = slot_count;
    sig.lca_closure_size = (int)closure.size();
    sig.ell = ell;
    for (int i = 0; i < slot_count; ++i)
        for (int j = i + 1; j < slot_count; ++j)
            if (piece.graph.adjacent(slot_vertex[(std::size_t)i],
                                     slot_vertex[(std::size_t)j]))
                sig.h_edges.emplace_back(i, j);

    // components of the tree minus the closure
    std::vector<int> comp_of((std::size_t)nodes, -1);
    int comp_count = 0;
    for (int u = 0; u < nodes; ++u) {
        if (in_closure[(std::size_t)u] || comp_of[(std::size_t)u] != -1)
            continue;
        std::vector<int> stack{u};
        comp_of[(std::size_t)u] = comp_count;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            std::vector<int> around = tree.children[(std::size_t)x];
            if (tree.parent[(std::size_t)x] >= 0)
                around.push_back(tree.parent[(std::size_t)x]);
            for (int y : around)
                if (!in_closure[(std::size_t)y] && comp_of[(std::size_t)y] == -1) {
                    comp_of[(std::size_t)y] = comp_count;
                    stack.push_back(y);
                }
        }
        ++comp_count;
    }
    sig.piece_count = comp_count;

    for (int c = 0; c < comp_count; ++c) {
        std::vector<int> comp_nodes;
        for (int u = 0; u < nodes; ++u)
            if (comp_of[(std::size_t)u] == c)
                comp_nodes.push_back(u);
        std::vector<int> attach; // closure nodes adjacent to the component
        for (int u : comp_nodes) {
            std::vector<int> around = tree.children[(std::size_t)u];
            if (tree.parent[(std::size_t)u] >= 0)
                around.push_back(tree.parent[(std::size_t)u]);
            for (int y : around)
                if (in_closure[(std::size_t)y])
                    attach.push_back(y);
        }
        std::sort(attach.begin(), attach.end());
        attach.erase(std::unique(attach.begin(), attach.end()), attach.end());
        if ((int)attach.size() > 2)
            throw ContractError("signature: split piece touches " +
                                std::to_string(attach.size()) + " closure nodes");
        VertexSet piece_vertices;
        for (int u : comp_nodes)
            piece_vertices = piece_vertices.unite(tree.bags[(std::size_t)u]);
        VertexSet piece_boundary;
        for (int u : attach)
            piece_boundary = piece_boundary.unite(tree.bags[(std::size_t)u]);
        piece_vertices = piece_vertices.unite(piece_boundary);

        SignaturePiece sp;
        for (int v : piece_boundary)
            sp.slots.push_back(slot_of.at(v));
        std::sort(sp.slots.begin(), sp.slots.end());

        InducedGraph part = induced_subgraph(piece.graph, piece_vertices);
        std::unordered_map<int, int> part_local;
        for (std::size_t i = 0; i < part.original_ids.size(); ++i)
            part_local[part.original_ids[i]] = (int)i;
        std::vector<int> part_boundary;
        for (int s : sp.slots)
            part_boundary.push_back(part_local.at(slot_vertex[(std::size_t)s]));
        sp.type = spec.fingerprint(part.graph, part_boundary);
        sig.pieces.push_back(std::move(sp));
    }

    // structural bounds; all guaranteed by the construction above
    signature_stats().computed.fetch_add(1, std::memory_order_relaxed);
    signature_stats().bound_checks.fetch_add(1, std::memory_order_relaxed);
    if (!(sig.lca_closure_size < 2 * ell))
        throw ContractError("signature bound violated: |Q| >= 2*ell");
    if (!(sig.piece_count <= 2 * ell))
        throw ContractError("signature bound violated: s > 2*ell");
    if (!(extended.size() <= 2 * ell * spec.t))
        throw ContractError("signature bound violated: |B'| > 2*ell*t");
    for (const auto& sp : sig.pieces)
        if (!((int)sp.slots.size() <= 2 * spec.t))
            throw ContractError("signature bound violated: |B_i| > 2t");
    {
        std::vector<int> slot_ids(slot_vertex.size());
        for (std::size_t i = 0; i < slot_vertex.size(); ++i)
            slot_ids[i] = slot_vertex[i];
        if (!treewidth_less_than(induced_subgraph(piece.graph, VertexSet(slot_ids)).graph,
                                 spec.t))
            throw ContractError("signature bound violated: tw(H) >= t");
    }
    return sig;
}

namespace detail {

struct CanonicalSearch {
    const Signature& sig;
    std::vector<std::vector<char>> adj; // slot adjacency matrix
    std::vector<int> class_of_slot;     // refinement class, canonical numbering
    std::vector<int> class_at_position; // required class per canonical position
    std::string best;
    bool have_best = false;
    std::vector<int> placed;            // canonical position -> slot
    std::vector<char> used;

    explicit CanonicalSearch(const Signature& s) : sig(s) {
        int m = sig.slot_count;
        adj.assign((std::size_t)m, std::vector<char>((std::size_t)m, 0));
        for (auto [a, b] : sig.h_edges)
            adj[(std::size_t)a][(std::size_t)b] = adj[(std::size_t)b][(std::size_t)a] = 1;
        refine();
    }

    // Color refinement over H. Boundary slots are singletons by position;
    // anonymous slots start from an invariant key of their piece incidences
    // and neighborhoods and are refined to a fixpoint.
    void refine() {
        int m = sig.slot_count;
        std::vector<std::string> key((std::size_t)m);
        for (int s = 0; s < m; ++s) {
            if (s < sig.boundary_size) {
                key[(std::size_t)s] = "B" + std::to_string(s);
                continue;
            }
            std::vector<std::string> inc;
            for (const auto& piece : sig.pieces) {
                if (!std::binary_search(piece.slots.begin(), piece.slots.end(), s))
                    continue;
                std::vector<int> marks_sorted = piece.type.marks;
                std::sort(marks_sorted.begin(), marks_sorted.end());
                std::string k = "(" + std::to_string(piece.slots.size()) + "|";
                for (int t : piece.type.tags)
                    k += std::to_string(t) + ",";
                k += "|";
                for (int t : marks_sorted)
                    k += std::to_string(t) + ",";
                k += ")";
                inc.push_back(k);
            }
            std::sort(inc.begin(), inc.end());
            key[(std::size_t)s] = "W";
            for (auto& k : inc)
                key[(std::size_t)s] += k;
        }
        std::vector<int> color = dense_ids(key);
        for (int round = 0; round < m; ++round) {
            std::vector<std::string> next((std::size_t)m);
            for (int s = 0; s < m; ++s) {
                std::vector<int> nb;
                for (int o = 0; o < m; ++o)
                    if (adj[(std::size_t)s][(std::size_t)o])
                        nb.push_back(color[(std::size_t)o]);
                std::sort(nb.begin(), nb.end());
                next[(std::size_t)s] = std::to_string(color[(std::size_t)s]) + ":";
                for (int c : nb)
                    next[(std::size_t)s] += std::to_string(c) + ",";
            }
            std::vector<int> refined = dense_ids(next);
            if (refined == color)
                break;
            color = refined;
        }
        class_of_slot = color;
        // canonical position->class schedule: boundary positions first, then
        // anonymous classes in ascending class id
        class_at_position.assign((std::size_t)m, -1);
        for (int p = 0; p < sig.boundary_size; ++p)
            class_at_position[(std::size_t)p] = color[(std::size_t)p];
        std::vector<int> anon_classes;
        for (int s = sig.boundary_size; s < m; ++s)
            anon_classes.push_back(color[(std::size_t)s]);
        std::sort(anon_classes.begin(), anon_classes.end());
        for (std::size_t i = 0; i < anon_classes.size(); ++i)
            class_at_position[(std::size_t)(sig.boundary_size + (int)i)] =
                anon_classes[i];
    }

    static std::vector<int> dense_ids(const std::vector<std::string>& keys) {
        std::vector<std::string> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> out(keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i)
            out[i] = (int)(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) -
                           sorted.begin());
        return out;
    }

    std::string serialize_secondary() const {
        // positions of each slot under the current assignment
        int m = sig.slot_count;
        std::vector<int> position((std::size_t)m, -1);
        for (int p = 0; p < m; ++p)
            position[(std::size_t)placed[(std::size_t)p]] = p;
        std::vector<std::string> parts;
        for (const auto& piece : sig.pieces) {
            std::vector<std::pair<int, int>> by_pos; // (canonical position, old index)
            for (std::size_t i = 0; i < piece.slots.size(); ++i)
                by_pos.emplace_back(position[(std::size_t)piece.slots[i]], (int)i);
            std::sort(by_pos.begin(), by_pos.end());
            std::vector<int> new_to_old;
            std::string slots_str;
            for (auto [pos, old] : by_pos) {
                new_to_old.push_back(old);
                slots_str += std::to_string(pos) + ",";
            }
            Fingerprint fp = piece.type.permuted(new_to_old);
            parts.push_back("(" + slots_str + "|" + fp.str() + ")");
        }
        std::sort(parts.begin(), parts.end());
        std::string out = ";P=";
        for (auto& p : parts)
            out += p;
        return out;
    }

    void search(int p, std::string& rows) {
        int m = sig.slot_count;
        if (have_best && rows.compare(0, rows.size(), best, 0, rows.size()) > 0)
            return;
        if (p == m) {
            std::string full = rows + serialize_secondary();
            if (!have_best || full < best) {
                best = full;
                have_best = true;
            }
            return;
        }
        if (p < sig.boundary_size) {
            // boundary slots are pinned to their positions
            placed[(std::size_t)p] = p;
            std::size_t len = rows.size();
            append_row(rows, p, p);
            search(p + 1, rows);
            rows.resize(len);
            return;
        }
        for (int s = sig.boundary_size; s < m; ++s) {
            if (used[(std::size_t)s] ||
                class_of_slot[(std::size_t)s] != class_at_position[(std::size_t)p])
                continue;
            used[(std::size_t)s] = 1;
            placed[(std::size_t)p] = s;
            std::size_t len = rows.size();
            append_row(rows, p, s);
            search(p + 1, rows);
            rows.resize(len);
            used[(std::size_t)s] = 0;
            if (test_hooks::faults().skip_canonical_backtracking && have_best)
                return; // first admissible completion only
        }
    }

    void append_row(std::string& rows, int p, int slot) const {
        for (int q = 0; q < p; ++q)
            rows += adj[(std::size_t)slot][(std::size_t)placed[(std::size_t)q]] ? '1'
                                                                                : '0';
        rows += ';';
    }

    std::string run() {
        int m = sig.slot_count;
        placed.assign((std::size_t)m, -1);
        used.assign((std::size_t)m, 0);
        std::string rows = "s=" + std::to_string(sig.piece_count) +
                           ";x=" + std::to_string(sig.boundary_size) +
                           ";m=" + std::to_string(m) + ";H=";
        search(0, rows);
        return best;
    }
};

} // namespace detail

// Canonical byte string, invariant under permutations of the anonymous slots
// (boundary slots stay fixed pointwise). Exact: color refinement narrows the
// candidates, then backtracking over class-respecting bijections picks the
// lexicographically least serialization, so two signatures map to the same
// string iff an anonymous-slot bijection matches H, the piece slot sets and
// the piece fingerprints.
inline CanonicalSignature canonicalize(const Signature& sig) {
    detail::CanonicalSearch search(sig);
    return CanonicalSignature{search.run()};
}

// Number of distinct canonical signatures over a sample of pieces of one
// graph; bench instrumentation.
inline std::size_t
signature_count_probe(const ProblemSpec& spec, int ell, const Graph& g,
                      const std::vector<std::pair<VertexSet, VertexSet>>& pieces) {
    std::map<std::string, int> seen;
    for (const auto& [f, b] : pieces)
        seen[canonicalize(compute_signature(spec, g, f, b, ell)).bytes] += 1;
    return seen.size();
}

} // namespace tia
