#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tia/decomposition.hpp"
#include "tia/errors.hpp"
#include "tia/graph.hpp"
#include "tia/rational.hpp"

// File formats. Graphs use the PACE-style .gr text format:
//   c <comment>
//   p tw <n> <m>
//   <u> <v>           (one line per edge, 1-indexed)
// Decompositions use the PACE-style .td format:
//   s td <#bags> <width+1> <n>
//   b <id> <v1> <v2> ...
//   <id1> <id2>       (tree edges)
// with an optional "c alpha <k>" line recording a claimed independence
// number. Vertex weights live in a sidecar file with one
// "<vertex> <numerator>/<denominator>" line per non-unit weight.

namespace tia {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

inline int parse_int(const std::string& tok, int line_no, const char* what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < INT32_MIN || v > INT32_MAX)
            throw std::invalid_argument(tok);
        return (int)v;
    } catch (const std::exception&) {
        throw InputError("line " + std::to_string(line_no) + ": expected " + what +
                         ", got '" + tok + "'");
    }
}

} // namespace detail

inline Graph read_gr(std::istream& in) {
    std::string line;
    int line_no = 0;
    int n = -1;
    long long m = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty() || toks[0] == "c")
            continue;
        if (toks[0] == "p") {
            if (n >= 0)
                throw InputError("line " + std::to_string(line_no) +
                                 ": duplicate problem line");
            if (toks.size() != 4 || toks[1] != "tw")
                throw InputError("line " + std::to_string(line_no) +
                                 ": expected 'p tw <n> <m>'");
            n = detail::parse_int(toks[2], line_no, "vertex count");
            m = detail::parse_int(toks[3], line_no, "edge count");
            if (n < 0 || m < 0)
                throw InputError("line " + std::to_string(line_no) +
                                 ": negative size in problem line");
            continue;
        }
        if (n < 0)
            throw InputError("line " + std::to_string(line_no) +
                             ": edge before problem line");
        if (toks.size() != 2)
            throw InputError("line " + std::to_string(line_no) +
                             ": expected '<u> <v>'");
        int u = detail::parse_int(toks[0], line_no, "vertex id");
        int v = detail::parse_int(toks[1], line_no, "vertex id");
        if (u < 1 || u > n || v < 1 || v > n)
            throw InputError("line " + std::to_string(line_no) +
                             ": vertex id out of range 1.." + std::to_string(n));
        if (u == v)
            throw InputError("line " + std::to_string(line_no) + ": self-loop");
        edges.emplace_back(u - 1, v - 1);
    }
    if (n < 0)
        throw InputError("missing 'p tw <n> <m>' line");
    if ((long long)edges.size() != m)
        throw InputError("edge count mismatch: header says " + std::to_string(m) +
                         ", file has " + std::to_string(edges.size()));
    return Graph(n, edges);
}

inline void write_gr(std::ostream& out, const Graph& g,
                     const std::vector<std::string>& comments = {}) {
    for (const auto& c : comments)
        out << "c " << c << "\n";
    auto edges = g.edge_list();
    out << "p tw " << g.vertex_count() << " " << edges.size() << "\n";
    for (auto [u, v] : edges)
        out << u + 1 << " " << v + 1 << "\n";
}

inline std::vector<Rational> read_weights(std::istream& in, int n) {
    std::vector<Rational> w((std::size_t)std::max(n, 0), Rational(1));
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty() || toks[0] == "c")
            continue;
        if (toks.size() != 2)
            throw InputError("line " + std::to_string(line_no) +
                             ": expected '<vertex> <weight>'");
        int v = detail::parse_int(toks[0], line_no, "vertex id");
        if (v < 1 || v > n)
            throw InputError("line " + std::to_string(line_no) +
                             ": vertex id out of range 1.." + std::to_string(n));
        Rational value = Rational::parse(toks[1]);
        if (value.is_negative())
            throw InputError("line " + std::to_string(line_no) + ": negative weight");
        w[(std::size_t)(v - 1)] = value;
    }
    return w;
}

inline void write_weights(std::ostream& out, const Graph& g) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!(g.weight(v) == Rational(1)))
            out << v + 1 << " " << g.weight(v).str() << "\n";
}

struct TdFile {
    TreeDecomposition td;
    std::optional<int> claimed_alpha;
    int declared_n = 0;
};

inline TdFile read_td(std::istream& in) {
    std::string line;
    int line_no = 0;
    int bags_declared = -1, n = 0;
    std::optional<int> claimed_alpha;
    std::vector<VertexSet> bags;
    std::vector<char> bag_seen;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty())
            continue;
        if (toks[0] == "c") {
            if (toks.size() == 3 && toks[1] == "alpha")
                claimed_alpha = detail::parse_int(toks[2], line_no, "alpha value");
            continue;
        }
        if (toks[0] == "s") {
            if (bags_declared >= 0)
                throw InputError("line " + std::to_string(line_no) +
                                 ": duplicate solution line");
            if (toks.size() != 5 || toks[1] != "td")
                throw InputError("line " + std::to_string(line_no) +
                                 ": expected 's td <#bags> <width+1> <n>'");
            bags_declared = detail::parse_int(toks[2], line_no, "bag count");
            detail::parse_int(toks[3], line_no, "width");
            n = detail::parse_int(toks[4], line_no, "vertex count");
            if (bags_declared < 0 || n < 0)
                throw InputError("line " + std::to_string(line_no) +
                                 ": negative size in solution line");
            bags.assign((std::size_t)bags_declared, VertexSet());
            bag_seen.assign((std::size_t)bags_declared, 0);
            continue;
        }
        if (bags_declared < 0)
            throw InputError("line " + std::to_string(line_no) +
                             ": content before solution line");
        if (toks[0] == "b") {
            if (toks.size() < 2)
                throw InputError("line " + std::to_string(line_no) + ": bad bag line");
            int id = detail::parse_int(toks[1], line_no, "bag id");
            if (id < 1 || id > bags_declared)
                throw InputError("line " + std::to_string(line_no) +
                                 ": bag id out of range");
            if (bag_seen[(std::size_t)(id - 1)])
                throw InputError("line " + std::to_string(line_no) +
                                 ": duplicate bag " + std::to_string(id));
            bag_seen[(std::size_t)(id - 1)] = 1;
            std::vector<int> members;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                int v = detail::parse_int(toks[i], line_no, "vertex id");
                if (v < 1 || v > n)
                    throw InputError("line " + std::to_string(line_no) +
                                     ": vertex id out of range 1.." +
                                     std::to_string(n));
                members.push_back(v - 1);
            }
            bags[(std::size_t)(id - 1)] = VertexSet(std::move(members));
            continue;
        }
        if (toks.size() != 2)
            throw InputError("line " + std::to_string(line_no) +
                             ": expected tree edge '<id1> <id2>'");
        int a = detail::parse_int(toks[0], line_no, "bag id");
        int b = detail::parse_int(toks[1], line_no, "bag id");
        if (a < 1 || a > bags_declared || b < 1 || b > bags_declared)
            throw InputError("line " + std::to_string(line_no) +
                             ": bag id out of range");
        edges.emplace_back(a - 1, b - 1);
    }
    if (bags_declared < 0)
        throw InputError("missing 's td ...' line");
    TdFile out{TreeDecomposition(std::move(bags), std::move(edges)), claimed_alpha, n};
    return out;
}

inline void write_td(std::ostream& out, const TreeDecomposition& td, int n,
                     std::optional<int> alpha_claim = std::nullopt,
                     const std::vector<std::string>& comments = {}) {
    for (const auto& c : comments)
        out << "c " << c << "\n";
    if (alpha_claim)
        out << "c alpha " << *alpha_claim << "\n";
    out << "s td " << td.node_count() << " " << td.width() + 1 << " " << n << "\n";
    for (int u = 0; u < td.node_count(); ++u) {
        out << "b " << u + 1;
        for (int v : td.node(u).bag)
            out << " " << v + 1;
        out << "\n";
    }
    for (auto [a, b] : td.tree_edges())
        out << a + 1 << " " << b + 1 << "\n";
}

inline std::vector<std::pair<Rational, Rational>> read_intervals(std::istream& in) {
    std::vector<std::pair<Rational, Rational>> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(line);
        if (toks.empty() || toks[0] == "c")
            continue;
        if (toks.size() != 2)
            throw InputError("line " + std::to_string(line_no) +
                             ": expected '<lo> <hi>'");
        Rational lo = Rational::parse(toks[0]);
        Rational hi = Rational::parse(toks[1]);
        if (hi < lo)
            throw InputError("line " + std::to_string(line_no) +
                             ": interval with hi < lo");
        out.emplace_back(lo, hi);
    }
    return out;
}

inline void write_intervals(std::ostream& out,
                            const std::vector<std::pair<Rational, Rational>>& ivs) {
    for (const auto& [lo, hi] : ivs)
        out << lo.str() << " " << hi.str() << "\n";
}

// Convenience path-based wrappers.
template <typename T, typename Fn>
inline T read_file(const std::string& path, Fn reader) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    try {
        return reader(in);
    } catch (InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline Graph read_gr_file(const std::string& path) {
    return read_file<Graph>(path, [](std::istream& in) { return read_gr(in); });
}
inline TdFile read_td_file(const std::string& path) {
    return read_file<TdFile>(path, [](std::istream& in) { return read_td(in); });
}
inline std::vector<Rational> read_weights_file(const std::string& path, int n) {
    return read_file<std::vector<Rational>>(
        path, [n](std::istream& in) { return read_weights(in, n); });
}
inline std::vector<std::pair<Rational, Rational>>
read_intervals_file(const std::string& path) {
    return read_file<std::vector<std::pair<Rational, Rational>>>(
        path, [](std::istream& in) { return read_intervals(in); });
}

} // namespace tia
