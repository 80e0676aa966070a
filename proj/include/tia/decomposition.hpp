#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tia/errors.hpp"
#include "tia/graph.hpp"

namespace tia {

enum class DecompositionKind { Raw, RootedBinary, Nice };

enum class NodeTag : std::uint8_t { None, Leaf, Introduce, Forget, Join };

inline const char* node_tag_name(NodeTag t) {
    switch (t) {
    case NodeTag::Leaf:
        return "leaf";
    case NodeTag::Introduce:
        return "introduce";
    case NodeTag::Forget:
        return "forget";
    case NodeTag::Join:
        return "join";
    default:
        return "none";
    }
}

struct DecompositionNode {
    VertexSet bag;
    std::vector<int> children; // meaningful for rooted kinds
    int parent = -1;
    NodeTag tag = NodeTag::None;
    int tagged_vertex = -1; // the vertex introduced or forgotten
};

// Tree of bags. Raw decompositions carry an undirected edge list; rooted
// kinds additionally maintain parent/children and (for Nice) node tags.
class TreeDecomposition {
  public:
    TreeDecomposition() = default;
    TreeDecomposition(std::vector<VertexSet> bags,
                      std::vector<std::pair<int, int>> tree_edges)
        : edges_(std::move(tree_edges)), kind_(DecompositionKind::Raw) {
        nodes_.reserve(bags.size());
        for (auto& b : bags) {
            DecompositionNode node;
            node.bag = std::move(b);
            nodes_.push_back(std::move(node));
        }
        for (auto [a, b] : edges_) {
            if (a < 0 || a >= (int)nodes_.size() || b < 0 || b >= (int)nodes_.size())
                throw InputError("tree edge endpoint out of range");
            if (a == b)
                throw InputError("tree edge loop at node " + std::to_string(a));
        }
        rebuild_neighbors();
    }

    static TreeDecomposition single_bag(VertexSet bag) {
        return TreeDecomposition({std::move(bag)}, {});
    }

    int node_count() const { return (int)nodes_.size(); }
    const DecompositionNode& node(int u) const { return nodes_[(std::size_t)u]; }
    const std::vector<std::pair<int, int>>& tree_edges() const { return edges_; }
    const std::vector<int>& tree_neighbors(int u) const {
        return neighbors_[(std::size_t)u];
    }
    DecompositionKind kind() const { return kind_; }
    int root() const { return root_; }

    int width() const {
        int w = -1;
        for (const auto& n : nodes_)
            w = std::max(w, n.bag.size() - 1);
        return w;
    }

    // Post-order over the rooted tree (children before parents).
    std::vector<int> post_order() const {
        std::vector<int> out;
        if (root_ < 0)
            return out;
        std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
        while (!stack.empty()) {
            auto& [u, next] = stack.back();
            if (next < nodes_[(std::size_t)u].children.size()) {
                int c = nodes_[(std::size_t)u].children[next];
                ++next;
                stack.emplace_back(c, 0);
            } else {
                out.push_back(u);
                stack.pop_back();
            }
        }
        return out;
    }

    // Construction helpers used by the builders below.
    struct Builder {
        std::vector<DecompositionNode> nodes;
        std::vector<std::pair<int, int>> edges;

        int add(VertexSet bag, NodeTag tag = NodeTag::None, int tagged = -1) {
            DecompositionNode n;
            n.bag = std::move(bag);
            n.tag = tag;
            n.tagged_vertex = tagged;
            nodes.push_back(std::move(n));
            return (int)nodes.size() - 1;
        }
        void link(int parent, int child) {
            edges.emplace_back(parent, child);
            nodes[(std::size_t)parent].children.push_back(child);
            nodes[(std::size_t)child].parent = parent;
        }
        TreeDecomposition finish(DecompositionKind kind, int root) {
            TreeDecomposition td;
            td.nodes_ = std::move(nodes);
            td.edges_ = std::move(edges);
            td.kind_ = kind;
            td.root_ = root;
            td.rebuild_neighbors();
            return td;
        }
    };

  private:
    void rebuild_neighbors() {
        neighbors_.assign(nodes_.size(), {});
        for (auto [a, b] : edges_) {
            neighbors_[(std::size_t)a].push_back(b);
            neighbors_[(std::size_t)b].push_back(a);
        }
        for (auto& nb : neighbors_)
            std::sort(nb.begin(), nb.end());
    }

    std::vector<DecompositionNode> nodes_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> neighbors_;
    DecompositionKind kind_ = DecompositionKind::Raw;
    int root_ = -1;
};

struct Violation {
    std::string axiom;   // "tree", "bag-range", "vertex-coverage",
                         // "edge-coverage", "connectivity", "nice-form"
    std::string witness;
};

struct ValidationReport {
    bool valid = false;
    int width = -1;
    int alpha = -1; // -1 when not computed
    int node_count = 0;
    std::vector<Violation> violations;

    std::string summary() const {
        std::string s = valid ? "valid" : "invalid";
        s += " width=" + std::to_string(width) + " alpha=" + std::to_string(alpha) +
             " nodes=" + std::to_string(node_count);
        for (const auto& v : violations)
            s += "\n  " + v.axiom + ": " + v.witness;
        return s;
    }
};

struct ValidateOptions {
    int independence_cap = kDefaultIndependenceCap;
    std::size_t node_cap = 1000000; // hard memory guard
    bool compute_alpha = true;
};

// Checks the three decomposition axioms plus, for nice decompositions, the
// node-tag grammar. Violations are data; only the caps raise errors.
inline ValidationReport validate(const Graph& g, const TreeDecomposition& td,
                                 const ValidateOptions& opt = {}) {
    if ((std::size_t)td.node_count() > opt.node_cap)
        throw ResourceError("decomposition has " + std::to_string(td.node_count()) +
                            " nodes, cap is " + std::to_string(opt.node_cap));
    ValidationReport report;
    report.node_count = td.node_count();
    report.width = td.width();
    int n = g.vertex_count();
    int nodes = td.node_count();

    if (nodes == 0) {
        if (n > 0)
            report.violations.push_back({"tree", "decomposition has no nodes"});
        report.valid = report.violations.empty();
        if (opt.compute_alpha)
            report.alpha = 0;
        return report;
    }

    // tree shape
    if ((int)td.tree_edges().size() != nodes - 1) {
        report.violations.push_back(
            {"tree", std::to_string(td.tree_edges().size()) + " edges on " +
                         std::to_string(nodes) + " nodes"});
    } else {
        std::vector<char> seen((std::size_t)nodes, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : td.tree_neighbors(u))
                if (!seen[(std::size_t)v]) {
                    seen[(std::size_t)v] = 1;
                    ++reached;
                    stack.push_back(v);
                }
        }
        if (reached != nodes)
            report.violations.push_back({"tree", "node graph is disconnected"});
    }

    // bag contents
    std::vector<std::vector<int>> nodes_with((std::size_t)std::max(n, 0));
    for (int u = 0; u < nodes; ++u) {
        for (int v : td.node(u).bag) {
            if (v < 0 || v >= n) {
                report.violations.push_back(
                    {"bag-range", "node " + std::to_string(u) + " contains vertex " +
                                      std::to_string(v)});
            } else {
                nodes_with[(std::size_t)v].push_back(u);
            }
        }
    }

    // (i) vertex coverage
    for (int v = 0; v < n; ++v)
        if (nodes_with[(std::size_t)v].empty())
            report.violations.push_back(
                {"vertex-coverage", "vertex " + std::to_string(v) + " is in no bag"});

    // (ii) edge coverage
    for (auto [u, v] : g.edge_list()) {
        const auto& a = nodes_with[(std::size_t)u];
        const auto& b = nodes_with[(std::size_t)v];
        bool covered = false;
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] == b[j]) {
                covered = true;
                break;
            }
            if (a[i] < b[j])
                ++i;
            else
                ++j;
        }
        if (!covered)
            report.violations.push_back(
                {"edge-coverage", "edge (" + std::to_string(u) + "," +
                                      std::to_string(v) + ") is in no bag"});
    }

    // (iii) connectivity of the occurrence set of each vertex
    for (int v = 0; v < n; ++v) {
        const auto& occ = nodes_with[(std::size_t)v];
        if (occ.size() <= 1)
            continue;
        std::vector<char> in_occ((std::size_t)nodes, 0);
        for (int u : occ)
            in_occ[(std::size_t)u] = 1;
        std::vector<int> stack{occ[0]};
        std::vector<char> seen((std::size_t)nodes, 0);
        seen[(std::size_t)occ[0]] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : td.tree_neighbors(u)) {
                if (in_occ[(std::size_t)w] && !seen[(std::size_t)w]) {
                    seen[(std::size_t)w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        if (reached != occ.size())
            report.violations.push_back(
                {"connectivity",
                 "vertex " + std::to_string(v) + " occurs in a disconnected node set"});
    }

    // nice-form grammar
    if (td.kind() == DecompositionKind::Nice) {
        int r = td.root();
        if (r < 0 || r >= nodes) {
            report.violations.push_back({"nice-form", "missing root"});
        } else if (!td.node(r).bag.empty()) {
            report.violations.push_back({"nice-form", "root bag is not empty"});
        }
        for (int u = 0; u < nodes; ++u) {
            const auto& nd = td.node(u);
            std::string at = "node " + std::to_string(u);
            switch (nd.tag) {
            case NodeTag::Leaf:
                if (!nd.children.empty() || !nd.bag.empty())
                    report.violations.push_back({"nice-form", at + ": bad leaf"});
                break;
            case NodeTag::Introduce: {
                if (nd.children.size() != 1 || nd.tagged_vertex < 0) {
                    report.violations.push_back({"nice-form", at + ": bad introduce"});
                    break;
                }
                const auto& cb = td.node(nd.children[0]).bag;
                if (cb.contains(nd.tagged_vertex) ||
                    !(cb.with(nd.tagged_vertex) == nd.bag))
                    report.violations.push_back(
                        {"nice-form", at + ": introduce bag mismatch"});
                break;
            }
            case NodeTag::Forget: {
                if (nd.children.size() != 1 || nd.tagged_vertex < 0) {
                    report.violations.push_back({"nice-form", at + ": bad forget"});
                    break;
                }
                const auto& cb = td.node(nd.children[0]).bag;
                if (!cb.contains(nd.tagged_vertex) ||
                    !(cb.without(nd.tagged_vertex) == nd.bag))
                    report.violations.push_back(
                        {"nice-form", at + ": forget bag mismatch"});
                break;
            }
            case NodeTag::Join:
                if (nd.children.size() != 2 ||
                    !(td.node(nd.children[0]).bag == nd.bag) ||
                    !(td.node(nd.children[1]).bag == nd.bag))
                    report.violations.push_back({"nice-form", at + ": bad join"});
                break;
            default:
                report.violations.push_back({"nice-form", at + ": untagged node"});
            }
        }
    }

    if (opt.compute_alpha) {
        int alpha = 0;
        bool ok = true;
        for (int u = 0; u < nodes && ok; ++u) {
            for (int v : td.node(u).bag)
                if (v < 0 || v >= n) {
                    ok = false;
                    break;
                }
            if (ok)
                alpha = std::max(alpha, independence_number(g, td.node(u).bag,
                                                            opt.independence_cap));
        }
        report.alpha = ok ? alpha : -1;
    }

    report.valid = report.violations.empty();
    return report;
}

// Max over bags of the exact per-bag independence number.
inline int alpha_of_decomposition(const Graph& g, const TreeDecomposition& td,
                                  int cap = kDefaultIndependenceCap) {
    int alpha = 0;
    for (int u = 0; u < td.node_count(); ++u)
        alpha = std::max(alpha, independence_number(g, td.node(u).bag, cap));
    return alpha;
}

// Roots the tree at `root` and caps fan-out at two children by inserting
// chains of duplicate bags: a node with children c1..cd (d > 2) becomes a
// chain of d copies where copy i owns child ci.
inline TreeDecomposition root_and_binarize(const TreeDecomposition& td, int root) {
    if (root < 0 || root >= td.node_count())
        throw InputError("unknown root node " + std::to_string(root));
    TreeDecomposition::Builder out;
    if (td.node_count() == 0)
        return out.finish(DecompositionKind::RootedBinary, -1);

    struct Item {
        int original;
        int from; // original parent
        int attach_to; // new node id, -1 for the root
    };
    std::vector<Item> stack{{root, -1, -1}};
    int new_root = -1;
    while (!stack.empty()) {
        Item item = stack.back();
        stack.pop_back();
        std::vector<int> kids;
        for (int v : td.tree_neighbors(item.original))
            if (v != item.from)
                kids.push_back(v);
        int first = out.add(td.node(item.original).bag);
        if (item.attach_to >= 0)
            out.link(item.attach_to, first);
        else
            new_root = first;
        if ((int)kids.size() <= 2) {
            for (int c : kids)
                stack.push_back({c, item.original, first});
        } else {
            int cur = first;
            for (std::size_t i = 0; i < kids.size(); ++i) {
                if (i > 0) {
                    int copy = out.add(td.node(item.original).bag);
                    out.link(cur, copy);
                    cur = copy;
                }
                stack.push_back({kids[i], item.original, cur});
            }
        }
    }
    return out.finish(DecompositionKind::RootedBinary, new_root);
}

// Nice-form conversion. Adjacent bags in subset relation are merged first,
// then the tree is binarized and every edge is expanded into a
// forget-then-introduce chain, one vertex per node in ascending id order.
// Output node count stays within 4*(width+1)*n + 4.
inline TreeDecomposition make_nice(const Graph& g, const TreeDecomposition& td,
                                   const ValidateOptions& opt = {}) {
    ValidateOptions check = opt;
    check.compute_alpha = false;
    ValidationReport report = validate(g, td, check);
    if (!report.valid)
        throw InputError("make_nice: invalid input decomposition\n" +
                         report.summary());

    // Merge adjacent bags in subset relation.
    int n0 = td.node_count();
    std::vector<VertexSet> bags;
    std::vector<std::pair<int, int>> edges;
    if (n0 == 0) {
        bags.push_back(VertexSet());
    } else {
        std::vector<int> repr((std::size_t)n0);
        for (int i = 0; i < n0; ++i) {
            repr[(std::size_t)i] = i;
            bags.push_back(td.node(i).bag);
        }
        std::function<int(int)> find = [&](int x) {
            while (repr[(std::size_t)x] != x)
                x = repr[(std::size_t)x] = repr[(std::size_t)repr[(std::size_t)x]];
            return x;
        };
        edges = td.tree_edges();
        bool merged = true;
        while (merged) {
            merged = false;
            for (auto [a, b] : edges) {
                int ra = find(a), rb = find(b);
                if (ra == rb)
                    continue;
                if (bags[(std::size_t)ra].subset_of(bags[(std::size_t)rb])) {
                    repr[(std::size_t)ra] = rb;
                    merged = true;
                } else if (bags[(std::size_t)rb].subset_of(bags[(std::size_t)ra])) {
                    repr[(std::size_t)rb] = ra;
                    merged = true;
                }
            }
        }
        std::vector<int> dense((std::size_t)n0, -1);
        std::vector<VertexSet> kept;
        for (int i = 0; i < n0; ++i) {
            if (find(i) == i) {
                dense[(std::size_t)i] = (int)kept.size();
                kept.push_back(bags[(std::size_t)i]);
            }
        }
        std::vector<std::pair<int, int>> kept_edges;
        for (auto [a, b] : edges) {
            int ra = dense[(std::size_t)find(a)], rb = dense[(std::size_t)find(b)];
            if (ra != rb)
                kept_edges.emplace_back(std::min(ra, rb), std::max(ra, rb));
        }
        std::sort(kept_edges.begin(), kept_edges.end());
        kept_edges.erase(std::unique(kept_edges.begin(), kept_edges.end()),
                         kept_edges.end());
        bags = std::move(kept);
        edges = std::move(kept_edges);
    }
    TreeDecomposition pruned(bags, edges);
    TreeDecomposition binary = root_and_binarize(pruned, 0);

    TreeDecomposition::Builder out;
    // Expands the subtree under `u` and returns the id of a node whose bag is
    // exactly binary.node(u).bag.
    std::function<int(int)> build = [&](int u) -> int {
        const auto& nd = binary.node(u);
        auto raise_to = [&](int from, const VertexSet& from_bag,
                            const VertexSet& to_bag) {
            int cur = from;
            VertexSet bag = from_bag;
            for (int v : from_bag.minus(to_bag)) {
                bag = bag.without(v);
                int next = out.add(bag, NodeTag::Forget, v);
                out.link(next, cur);
                cur = next;
            }
            for (int v : to_bag.minus(from_bag)) {
                bag = bag.with(v);
                int next = out.add(bag, NodeTag::Introduce, v);
                out.link(next, cur);
                cur = next;
            }
            return cur;
        };
        if (nd.children.empty()) {
            int cur = out.add(VertexSet(), NodeTag::Leaf);
            return raise_to(cur, VertexSet(), nd.bag);
        }
        if (nd.children.size() == 1) {
            int c = build(nd.children[0]);
            return raise_to(c, binary.node(nd.children[0]).bag, nd.bag);
        }
        int left = raise_to(build(nd.children[0]), binary.node(nd.children[0]).bag,
                            nd.bag);
        int right = raise_to(build(nd.children[1]), binary.node(nd.children[1]).bag,
                             nd.bag);
        int join = out.add(nd.bag, NodeTag::Join);
        out.link(join, left);
        out.link(join, right);
        return join;
    };
    int top = build(binary.root());
    VertexSet root_bag = binary.node(binary.root()).bag;
    VertexSet bag = root_bag;
    for (int v : root_bag) {
        bag = bag.without(v);
        int next = out.add(bag, NodeTag::Forget, v);
        out.link(next, top);
        top = next;
    }
    return out.finish(DecompositionKind::Nice, top);
}

// Tree decomposition induced by an elimination order: the bag of v is {v}
// plus the not-yet-eliminated vertices reachable from v through eliminated
// ones; the bag attaches to the bag of the earliest-eliminated such vertex.
inline TreeDecomposition decomposition_from_elimination(const Graph& g,
                                                        const std::vector<int>& order) {
    int n = g.vertex_count();
    if ((int)order.size() != n)
        throw ContractError("elimination order length mismatch");
    if (n == 0)
        return TreeDecomposition::single_bag(VertexSet());
    std::vector<int> position((std::size_t)n, -1);
    for (int i = 0; i < n; ++i) {
        int v = order[(std::size_t)i];
        if (v < 0 || v >= n || position[(std::size_t)v] != -1)
            throw ContractError("elimination order is not a permutation");
        position[(std::size_t)v] = i;
    }
    std::vector<VertexSet> bags((std::size_t)n);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> roots;
    std::vector<char> in_comp((std::size_t)n, 0);
    for (int i = 0; i < n; ++i) {
        int v = order[(std::size_t)i];
        // grow the eliminated component containing v
        std::vector<int> comp{v};
        in_comp[(std::size_t)v] = 1;
        std::vector<int> border;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            for (int u : g.neighbors(comp[head])) {
                if (in_comp[(std::size_t)u])
                    continue;
                in_comp[(std::size_t)u] = 1;
                if (position[(std::size_t)u] < i)
                    comp.push_back(u);
                else
                    border.push_back(u);
            }
        }
        for (int u : comp)
            in_comp[(std::size_t)u] = 0;
        for (int u : border)
            in_comp[(std::size_t)u] = 0;
        border.push_back(v);
        bags[(std::size_t)i] = VertexSet(std::move(border));
        // attach to the earliest-eliminated border vertex
        int attach = -1;
        for (int u : bags[(std::size_t)i])
            if (u != v && (attach == -1 ||
                           position[(std::size_t)u] < position[(std::size_t)attach]))
                attach = u;
        if (attach == -1)
            roots.push_back(i);
        else
            edges.emplace_back(i, position[(std::size_t)attach]);
    }
    for (std::size_t i = 1; i < roots.size(); ++i)
        edges.emplace_back(roots[i - 1], roots[i]);
    return TreeDecomposition(std::move(bags), std::move(edges));
}

} // namespace tia
