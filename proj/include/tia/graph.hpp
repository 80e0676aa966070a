#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tia/errors.hpp"
#include "tia/rational.hpp"

namespace tia {

// Sorted unique vertex ids. The fixed ascending order is what makes every
// set-valued result of the library deterministic.
class VertexSet {
  public:
    VertexSet() = default;
    explicit VertexSet(std::vector<int> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }
    static VertexSet full(int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = i;
        VertexSet s;
        s.ids_ = std::move(v);
        return s;
    }
    static VertexSet single(int v) {
        VertexSet s;
        s.ids_ = {v};
        return s;
    }

    int size() const { return (int)ids_.size(); }
    bool empty() const { return ids_.empty(); }
    bool contains(int v) const {
        return std::binary_search(ids_.begin(), ids_.end(), v);
    }
    const std::vector<int>& ids() const { return ids_; }
    int operator[](int i) const { return ids_[(std::size_t)i]; }
    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    VertexSet with(int v) const {
        if (contains(v))
            return *this;
        VertexSet r = *this;
        r.ids_.insert(std::upper_bound(r.ids_.begin(), r.ids_.end(), v), v);
        return r;
    }
    VertexSet without(int v) const {
        VertexSet r = *this;
        auto it = std::lower_bound(r.ids_.begin(), r.ids_.end(), v);
        if (it != r.ids_.end() && *it == v)
            r.ids_.erase(it);
        return r;
    }
    VertexSet unite(const VertexSet& o) const {
        VertexSet r;
        r.ids_.reserve(ids_.size() + o.ids_.size());
        std::set_union(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                       std::back_inserter(r.ids_));
        return r;
    }
    VertexSet intersect(const VertexSet& o) const {
        VertexSet r;
        std::set_intersection(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                              std::back_inserter(r.ids_));
        return r;
    }
    VertexSet minus(const VertexSet& o) const {
        VertexSet r;
        std::set_difference(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                            std::back_inserter(r.ids_));
        return r;
    }
    bool subset_of(const VertexSet& o) const {
        return std::includes(o.ids_.begin(), o.ids_.end(), ids_.begin(), ids_.end());
    }
    bool intersects(const VertexSet& o) const {
        auto a = ids_.begin();
        auto b = o.ids_.begin();
        while (a != ids_.end() && b != o.ids_.end()) {
            if (*a == *b)
                return true;
            if (*a < *b)
                ++a;
            else
                ++b;
        }
        return false;
    }

    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(ids_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) {
        return a.ids_ == b.ids_;
    }
    friend bool operator!=(const VertexSet& a, const VertexSet& b) {
        return !(a == b);
    }
    // Lexicographic on the ascending id sequence; the tie-break order used
    // throughout the solver.
    friend bool operator<(const VertexSet& a, const VertexSet& b) {
        return a.ids_ < b.ids_;
    }

  private:
    std::vector<int> ids_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (int v : s) {
            h ^= (std::uint64_t)(v + 1);
            h *= 1099511628211ULL;
        }
        return (std::size_t)h;
    }
};

// Immutable simple undirected graph with exact rational vertex weights
// (default 1). Vertices are dense ints 0..n-1.
class Graph {
  public:
    Graph() = default;
    Graph(int n, const std::vector<std::pair<int, int>>& edges,
          std::vector<Rational> weights = {})
        : n_(n), adj_((std::size_t)std::max(n, 0)) {
        if (n < 0)
            throw InputError("negative vertex count");
        for (auto [u, v] : edges) {
            if (u < 0 || u >= n_ || v < 0 || v >= n_)
                throw InputError("edge endpoint out of range: (" + std::to_string(u) +
                                 "," + std::to_string(v) + ")");
            if (u == v)
                throw InputError("self-loop at vertex " + std::to_string(u));
            adj_[(std::size_t)u].push_back(v);
            adj_[(std::size_t)v].push_back(u);
        }
        m_ = 0;
        for (auto& nb : adj_) {
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            m_ += (long long)nb.size();
        }
        m_ /= 2;
        if (weights.empty()) {
            weights_.assign((std::size_t)n_, Rational(1));
        } else {
            if ((int)weights.size() != n_)
                throw InputError("weight vector size mismatch");
            for (const auto& w : weights)
                if (w.is_negative())
                    throw InputError("negative vertex weight " + w.str());
            weights_ = std::move(weights);
        }
    }

    int vertex_count() const { return n_; }
    long long edge_count() const { return m_; }
    bool adjacent(int u, int v) const {
        check_vertex(u);
        check_vertex(v);
        const auto& nb = adj_[(std::size_t)u];
        return std::binary_search(nb.begin(), nb.end(), v);
    }
    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[(std::size_t)v];
    }
    int degree(int v) const { return (int)neighbors(v).size(); }
    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v)
            d = std::max(d, (int)adj_[(std::size_t)v].size());
        return d;
    }
    const Rational& weight(int v) const {
        check_vertex(v);
        return weights_[(std::size_t)v];
    }
    const std::vector<Rational>& weights() const { return weights_; }
    Rational weight_of(const VertexSet& s) const {
        Rational total(0);
        for (int v : s)
            total += weight(v);
        return total;
    }
    Graph with_weights(std::vector<Rational> weights) const {
        return Graph(n_, edge_list(), std::move(weights));
    }
    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> e;
        e.reserve((std::size_t)m_);
        for (int u = 0; u < n_; ++u)
            for (int v : adj_[(std::size_t)u])
                if (u < v)
                    e.emplace_back(u, v);
        return e;
    }
    VertexSet all_vertices() const { return VertexSet::full(n_); }

  private:
    void check_vertex(int v) const {
        if (v < 0 || v >= n_)
            throw InputError("vertex id out of range: " + std::to_string(v));
    }

    int n_ = 0;
    long long m_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<Rational> weights_;
};

struct InducedGraph {
    Graph graph;
    std::vector<int> original_ids; // local id -> id in the parent graph
};

// G[s], re-indexed to 0..|s|-1 with the id map retained.
inline InducedGraph induced_subgraph(const Graph& g, const VertexSet& s) {
    for (int v : s)
        if (v < 0 || v >= g.vertex_count())
            throw InputError("induced_subgraph: vertex id out of range: " +
                             std::to_string(v));
    std::unordered_map<int, int> local;
    local.reserve((std::size_t)s.size() * 2);
    for (int i = 0; i < s.size(); ++i)
        local[s[i]] = i;
    std::vector<std::pair<int, int>> edges;
    std::vector<Rational> weights;
    weights.reserve((std::size_t)s.size());
    for (int i = 0; i < s.size(); ++i) {
        int v = s[i];
        weights.push_back(g.weight(v));
        for (int u : g.neighbors(v)) {
            if (u > v)
                continue;
            auto it = local.find(u);
            if (it != local.end())
                edges.emplace_back(it->second, i);
        }
    }
    return InducedGraph{Graph(s.size(), edges, std::move(weights)), s.ids()};
}

// Component label per vertex, numbered 0.. in order of smallest member.
inline std::vector<int> component_labels(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> label((std::size_t)n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (label[(std::size_t)s] != -1)
            continue;
        label[(std::size_t)s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : g.neighbors(v)) {
                if (label[(std::size_t)u] == -1) {
                    label[(std::size_t)u] = next;
                    stack.push_back(u);
                }
            }
        }
        ++next;
    }
    return label;
}

inline std::vector<VertexSet> components(const Graph& g) {
    auto label = component_labels(g);
    int c = 0;
    for (int l : label)
        c = std::max(c, l + 1);
    std::vector<std::vector<int>> parts((std::size_t)c);
    for (int v = 0; v < g.vertex_count(); ++v)
        parts[(std::size_t)label[(std::size_t)v]].push_back(v);
    std::vector<VertexSet> out;
    out.reserve((std::size_t)c);
    for (auto& p : parts)
        out.push_back(VertexSet(std::move(p)));
    return out;
}

inline int component_count(const Graph& g) {
    auto label = component_labels(g);
    int c = 0;
    for (int l : label)
        c = std::max(c, l + 1);
    return c;
}

inline bool is_forest(const Graph& g) {
    return g.edge_count() == g.vertex_count() - component_count(g);
}

inline constexpr int kDefaultIndependenceCap = 40;
inline constexpr int kTreewidthVertexCap = 25;

namespace detail {

// Word-parallel set helpers for the branch-and-bound search.
struct BitRows {
    int n = 0;
    int words = 0;
    std::vector<std::uint64_t> rows; // n rows of `words` words

    std::uint64_t* row(int v) { return rows.data() + (std::size_t)v * words; }
    const std::uint64_t* row(int v) const {
        return rows.data() + (std::size_t)v * words;
    }
};

inline int popcount_words(const std::uint64_t* a, int words) {
    int c = 0;
    for (int i = 0; i < words; ++i)
        c += __builtin_popcountll(a[i]);
    return c;
}

struct MisSearch {
    const BitRows& adj;
    int best = 0;

    // Greedy clique partition of R; its size bounds the independence number.
    int clique_bound(const std::vector<std::uint64_t>& r) const {
        std::vector<std::uint64_t> left = r;
        std::vector<std::vector<std::uint64_t>> cand; // per clique: common neighborhood
        int cliques = 0;
        for (int v = 0; v < adj.n; ++v) {
            if (!(left[(std::size_t)(v >> 6)] >> (v & 63) & 1))
                continue;
            bool placed = false;
            for (auto& c : cand) {
                if (c[(std::size_t)(v >> 6)] >> (v & 63) & 1) {
                    for (int w = 0; w < adj.words; ++w)
                        c[(std::size_t)w] &= adj.row(v)[w];
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                cand.emplace_back(adj.row(v), adj.row(v) + adj.words);
                ++cliques;
            }
        }
        return cliques;
    }

    void run(std::vector<std::uint64_t> r, int current) {
        int remaining = popcount_words(r.data(), adj.words);
        if (remaining == 0) {
            best = std::max(best, current);
            return;
        }
        if (current + remaining <= best)
            return;
        if (current + clique_bound(r) <= best)
            return;
        // pivot: max degree within R
        int pivot = -1, pivot_deg = -1;
        for (int v = 0; v < adj.n; ++v) {
            if (!(r[(std::size_t)(v >> 6)] >> (v & 63) & 1))
                continue;
            int d = 0;
            for (int w = 0; w < adj.words; ++w)
                d += __builtin_popcountll(adj.row(v)[w] & r[(std::size_t)w]);
            if (d > pivot_deg) {
                pivot_deg = d;
                pivot = v;
            }
        }
        // include pivot
        std::vector<std::uint64_t> in = r;
        in[(std::size_t)(pivot >> 6)] &= ~(1ULL << (pivot & 63));
        for (int w = 0; w < adj.words; ++w)
            in[(std::size_t)w] &= ~adj.row(pivot)[w];
        run(std::move(in), current + 1);
        // exclude pivot
        r[(std::size_t)(pivot >> 6)] &= ~(1ULL << (pivot & 63));
        run(std::move(r), current);
    }
};

} // namespace detail

// Exact independence number of G[s] by branch and bound with a greedy
// clique-cover bound. Cap guards against pathological inputs; callers that
// know their bags are clique-covered can raise it.
inline int independence_number(const Graph& g, const VertexSet& s,
                               int cap = kDefaultIndependenceCap) {
    for (int v : s)
        if (v < 0 || v >= g.vertex_count())
            throw InputError("independence_number: vertex id out of range: " +
                             std::to_string(v));
    if (s.size() > cap)
        throw ResourceError("independence_number: set of size " +
                            std::to_string(s.size()) + " exceeds cap " +
                            std::to_string(cap));
    if (s.empty())
        return 0;
    InducedGraph sub = induced_subgraph(g, s);
    int n = sub.graph.vertex_count();
    detail::BitRows rows;
    rows.n = n;
    rows.words = (n + 63) / 64;
    rows.rows.assign((std::size_t)n * rows.words, 0);
    for (int v = 0; v < n; ++v)
        for (int u : sub.graph.neighbors(v))
            rows.row(v)[u >> 6] |= 1ULL << (u & 63);
    detail::MisSearch search{rows};
    std::vector<std::uint64_t> all((std::size_t)rows.words, 0);
    for (int v = 0; v < n; ++v)
        all[(std::size_t)(v >> 6)] |= 1ULL << (v & 63);
    search.run(std::move(all), 0);
    return search.best;
}

inline int independence_number(const Graph& g, int cap = kDefaultIndependenceCap) {
    return independence_number(g, g.all_vertices(), cap);
}

namespace detail {

// Reachability-based back-degree: vertices outside S u {v} connected to v
// through eliminated set S.
inline std::uint32_t elimination_border(const std::vector<std::uint32_t>& adj,
                                        std::uint32_t s, int v) {
    std::uint32_t comp = 1u << v, prev = 0;
    while (comp != prev) {
        prev = comp;
        std::uint32_t nb = 0;
        std::uint32_t it = comp;
        while (it) {
            int w = __builtin_ctz(it);
            it &= it - 1;
            nb |= adj[(std::size_t)w];
        }
        comp |= nb & s;
    }
    std::uint32_t nb = 0, it = comp;
    while (it) {
        int w = __builtin_ctz(it);
        it &= it - 1;
        nb |= adj[(std::size_t)w];
    }
    return nb & ~s & ~(1u << v);
}

// Subset DP deciding whether the component given by `verts` admits an
// elimination order with back-degree <= t-1; returns the order if so.
inline std::optional<std::vector<int>>
component_elimination_order(const Graph& g, const std::vector<int>& verts, int t) {
    int k = (int)verts.size();
    if (k > kTreewidthVertexCap)
        throw ResourceError("treewidth test: component of size " + std::to_string(k) +
                            " exceeds cap " + std::to_string(kTreewidthVertexCap));
    if (k <= t) {
        return verts; // any order has back-degree <= k-1 <= t-1
    }
    long long m = 0;
    std::vector<std::uint32_t> adj((std::size_t)k, 0);
    std::unordered_map<int, int> local;
    for (int i = 0; i < k; ++i)
        local[verts[(std::size_t)i]] = i;
    for (int i = 0; i < k; ++i)
        for (int u : g.neighbors(verts[(std::size_t)i])) {
            auto it = local.find(u);
            if (it != local.end()) {
                adj[(std::size_t)i] |= 1u << it->second;
                ++m;
            }
        }
    m /= 2;
    // max edge count of a graph with treewidth < t
    if (m > (long long)(t - 1) * k - (long long)t * (t - 1) / 2)
        return std::nullopt;

    std::size_t states = (std::size_t)1 << k;
    std::vector<std::uint8_t> ok(states, 0);
    std::vector<std::int8_t> choice(states, -1);
    ok[0] = 1;
    for (std::uint32_t s = 1; s < states; ++s) {
        std::uint32_t it = s;
        while (it) {
            int v = __builtin_ctz(it);
            it &= it - 1;
            std::uint32_t rest = s & ~(1u << v);
            if (!ok[rest])
                continue;
            if (__builtin_popcount(elimination_border(adj, rest, v)) <= t - 1) {
                ok[s] = 1;
                choice[s] = (std::int8_t)v;
                break;
            }
        }
    }
    std::uint32_t full = (std::uint32_t)(states - 1);
    if (!ok[full])
        return std::nullopt;
    std::vector<int> order((std::size_t)k);
    std::uint32_t s = full;
    for (int pos = k - 1; pos >= 0; --pos) {
        int v = choice[s];
        order[(std::size_t)pos] = verts[(std::size_t)v];
        s &= ~(1u << v);
    }
    return order;
}

} // namespace detail

// An elimination order of g whose back-degree never exceeds t-1 (i.e. a
// witness that tw(g) < t), or nullopt when none exists. For t >= 3 the search
// runs a subset DP per component after peeling low-degree simplicial
// vertices, so components beyond kTreewidthVertexCap raise ResourceError.
inline std::optional<std::vector<int>>
elimination_order_with_width_below(const Graph& g, int t) {
    if (t < 1)
        throw InputError("treewidth bound must be at least 1");
    int n = g.vertex_count();
    std::vector<int> order;
    order.reserve((std::size_t)n);
    if (t == 1) {
        if (g.edge_count() > 0)
            return std::nullopt;
        for (int v = 0; v < n; ++v)
            order.push_back(v);
        return order;
    }
    if (t == 2) {
        // forests: peel vertices of degree <= 1, smallest id first
        std::vector<int> deg((std::size_t)n);
        std::vector<char> gone((std::size_t)n, 0);
        for (int v = 0; v < n; ++v)
            deg[(std::size_t)v] = g.degree(v);
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (deg[(std::size_t)v] <= 1)
                queue.push_back(v);
        std::size_t head = 0;
        while (head < queue.size()) {
            int v = queue[head++];
            if (gone[(std::size_t)v])
                continue;
            gone[(std::size_t)v] = 1;
            order.push_back(v);
            for (int u : g.neighbors(v)) {
                if (gone[(std::size_t)u])
                    continue;
                if (--deg[(std::size_t)u] == 1)
                    queue.push_back(u);
            }
        }
        if ((int)order.size() != n)
            return std::nullopt; // a cycle remains
        return order;
    }

    // Peel simplicial vertices of degree <= t-1: they are always a safe
    // prefix of the order and shrink the DP below.
    std::vector<char> gone((std::size_t)n, 0);
    std::vector<int> deg((std::size_t)n);
    for (int v = 0; v < n; ++v)
        deg[(std::size_t)v] = g.degree(v);
    bool changed = true;
    auto live_clique = [&](int v) {
        std::vector<int> nb;
        for (int u : g.neighbors(v))
            if (!gone[(std::size_t)u])
                nb.push_back(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!g.adjacent(nb[i], nb[j]))
                    return false;
        return true;
    };
    while (changed) {
        changed = false;
        for (int v = 0; v < n; ++v) {
            if (gone[(std::size_t)v] || deg[(std::size_t)v] > t - 1)
                continue;
            if (!live_clique(v))
                continue;
            gone[(std::size_t)v] = 1;
            order.push_back(v);
            for (int u : g.neighbors(v))
                if (!gone[(std::size_t)u])
                    --deg[(std::size_t)u];
            changed = true;
        }
    }
    std::vector<int> rest;
    for (int v = 0; v < n; ++v)
        if (!gone[(std::size_t)v])
            rest.push_back(v);
    if (rest.empty())
        return order;

    // remaining components, smallest member first
    std::vector<std::pair<int, int>> rest_edges;
    std::unordered_map<int, int> local;
    for (std::size_t i = 0; i < rest.size(); ++i)
        local[rest[i]] = (int)i;
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (int u : g.neighbors(rest[i])) {
            auto it = local.find(u);
            if (it != local.end() && (int)i < it->second)
                rest_edges.emplace_back((int)i, it->second);
        }
    Graph rest_graph((int)rest.size(), rest_edges);
    for (const VertexSet& comp : components(rest_graph)) {
        std::vector<int> verts;
        for (int v : comp)
            verts.push_back(rest[(std::size_t)v]);
        auto sub = detail::component_elimination_order(g, verts, t);
        if (!sub)
            return std::nullopt;
        for (int v : *sub)
            order.push_back(v);
    }
    return order;
}

// Exact test of tw(g) < t. t=1 is the edgeless test, t=2 the forest test,
// t>=3 the elimination-order subset DP.
inline bool treewidth_less_than(const Graph& g, int t) {
    if (t < 1)
        throw InputError("treewidth bound must be at least 1");
    if (t == 1)
        return g.edge_count() == 0;
    if (t == 2)
        return is_forest(g);
    return elimination_order_with_width_below(g, t).has_value();
}

// Memoizing tw(g[s]) < t tester for one fixed graph and bound; safe for
// concurrent callers.
class TreewidthOracle {
  public:
    TreewidthOracle(const Graph& g, int t) : g_(&g), t_(t) {}

    int bound() const { return t_; }

    bool less_than(const VertexSet& s) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(s);
            if (it != memo_.end())
                return it->second;
        }
        bool value = treewidth_less_than(induced_subgraph(*g_, s).graph, t_);
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(s, value);
        return value;
    }

    long long queries() const { return (long long)memo_.size(); }

  private:
    const Graph* g_;
    int t_;
    std::mutex mu_;
    std::unordered_map<VertexSet, bool, VertexSetHash> memo_;
};

} // namespace tia
