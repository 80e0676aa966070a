#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tia/boundaried.hpp"
#include "tia/errors.hpp"
#include "tia/graph.hpp"

namespace tia {

// Finite compositional summary of a boundaried piece: everything the dynamic
// program needs to know about a partial solution relative to its boundary.
//
//   part  - connectivity partition of boundary positions (class id per
//           position, normalized by first occurrence); empty when untracked
//   marks - per-position small ints (internal degrees, matched flags)
//   tags  - position-independent values (dead-piece flag, size mod p)
//
// Keeping fingerprints as per-position data gives a uniform permutation
// action, which the signature canonicalizer relies on.
struct Fingerprint {
    std::vector<int> part;
    std::vector<int> marks;
    std::vector<int> tags;

    static std::vector<int> normalize_partition(const std::vector<int>& classes) {
        std::vector<int> out(classes.size(), -1);
        std::vector<int> seen;
        for (std::size_t i = 0; i < classes.size(); ++i) {
            int c = classes[i];
            int id = -1;
            for (std::size_t j = 0; j < seen.size(); ++j)
                if (seen[j] == c) {
                    id = (int)j;
                    break;
                }
            if (id == -1) {
                id = (int)seen.size();
                seen.push_back(c);
            }
            out[i] = id;
        }
        return out;
    }

    // Fingerprint of the same piece with its boundary reordered:
    // new position i corresponds to old position new_to_old[i].
    Fingerprint permuted(const std::vector<int>& new_to_old) const {
        Fingerprint out;
        out.tags = tags;
        if (!part.empty()) {
            std::vector<int> reordered(new_to_old.size());
            for (std::size_t i = 0; i < new_to_old.size(); ++i)
                reordered[i] = part[(std::size_t)new_to_old[i]];
            out.part = normalize_partition(reordered);
        }
        if (!marks.empty()) {
            out.marks.resize(new_to_old.size());
            for (std::size_t i = 0; i < new_to_old.size(); ++i)
                out.marks[i] = marks[(std::size_t)new_to_old[i]];
        }
        return out;
    }

    std::string str() const {
        auto join = [](const std::vector<int>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i)
                    s += ",";
                s += std::to_string(v[i]);
            }
            return s;
        };
        return "p[" + join(part) + "]m[" + join(marks) + "]t[" + join(tags) + "]";
    }

    friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
        return a.part == b.part && a.marks == b.marks && a.tags == b.tags;
    }
    friend bool operator!=(const Fingerprint& a, const Fingerprint& b) {
        return !(a == b);
    }
    friend bool operator<(const Fingerprint& a, const Fingerprint& b) {
        if (a.part != b.part)
            return a.part < b.part;
        if (a.marks != b.marks)
            return a.marks < b.marks;
        return a.tags < b.tags;
    }
};

// A target problem: treewidth bound t for the solution, a whole-graph
// acceptance test, and the boundary fingerprint the tables compress by.
// The optional modulus constrains the solution size to `residue` mod
// `modulus` and threads a size counter through every fingerprint.
class ProblemSpec {
  public:
    std::string name;
    std::string base;
    int t = 1;
    int modulus = 0; // 0 = no size constraint
    int residue = 0;
    std::function<Fingerprint(const Graph&, const std::vector<int>&)> fingerprint_fn;
    std::function<bool(const Graph&)> accepts_fn;

    // Fingerprint of a boundaried piece. Callers must pre-filter with the
    // treewidth test; this only rechecks cheaply testable contracts.
    Fingerprint fingerprint(const Graph& piece, const std::vector<int>& boundary) const {
        if ((int)boundary.size() > 2 * t)
            throw ContractError("fingerprint: boundary of size " +
                                std::to_string(boundary.size()) + " exceeds 2t=" +
                                std::to_string(2 * t));
        for (int v : boundary)
            if (v < 0 || v >= piece.vertex_count())
                throw ContractError("fingerprint: boundary vertex out of range");
        if (!treewidth_less_than(piece, t))
            throw ContractError("fingerprint: piece treewidth not below " +
                                std::to_string(t));
        Fingerprint fp = fingerprint_fn(piece, boundary);
        if (modulus >= 2)
            fp.tags.push_back(piece.vertex_count() % modulus);
        return fp;
    }

    Fingerprint fingerprint(const BoundariedGraph& g) const {
        return fingerprint(g.graph, g.boundary);
    }

    bool accepts(const Graph& g) const {
        if (!accepts_fn(g))
            return false;
        if (modulus >= 2 && g.vertex_count() % modulus != residue)
            return false;
        return true;
    }
};

namespace detail {

inline std::vector<int> boundary_components(const Graph& piece,
                                            const std::vector<int>& boundary) {
    std::vector<int> labels = component_labels(piece);
    std::vector<int> classes;
    classes.reserve(boundary.size());
    for (int v : boundary)
        classes.push_back(labels[(std::size_t)v]);
    return Fingerprint::normalize_partition(classes);
}

inline bool max_degree_at_most(const Graph& g, int d) {
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) > d)
            return false;
    return true;
}

} // namespace detail

// Plugin registry. Names: mwis, induced-forest, induced-linear-forest,
// induced-matching, each optionally suffixed "@mod<p>=<r>".
inline ProblemSpec problem_by_name(const std::string& request) {
    std::string base = request;
    int modulus = 0, residue = 0;
    auto at = request.find('@');
    if (at != std::string::npos) {
        base = request.substr(0, at);
        std::string suffix = request.substr(at + 1);
        if (suffix.rfind("mod", 0) != 0)
            throw InputError("unknown problem modifier: " + suffix);
        auto eq = suffix.find('=');
        if (eq == std::string::npos)
            throw InputError("modifier needs a residue: " + suffix);
        try {
            modulus = std::stoi(suffix.substr(3, eq - 3));
            residue = std::stoi(suffix.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("bad modifier: " + suffix);
        }
        if (modulus < 2 || residue < 0 || residue >= modulus)
            throw InputError("modifier needs 2 <= mod and 0 <= residue < mod");
    }

    ProblemSpec spec;
    spec.name = request;
    spec.base = base;
    spec.modulus = modulus;
    spec.residue = residue;

    if (base == "mwis") {
        // independent sets: pieces are edgeless, nothing to track
        spec.t = 1;
        spec.fingerprint_fn = [](const Graph&, const std::vector<int>&) {
            return Fingerprint{};
        };
        spec.accepts_fn = [](const Graph&) { return true; };
    } else if (base == "induced-forest") {
        spec.t = 2;
        spec.fingerprint_fn = [](const Graph& piece, const std::vector<int>& boundary) {
            Fingerprint fp;
            fp.part = detail::boundary_components(piece, boundary);
            return fp;
        };
        spec.accepts_fn = [](const Graph& g) { return is_forest(g); };
    } else if (base == "induced-linear-forest") {
        spec.t = 2;
        spec.fingerprint_fn = [](const Graph& piece, const std::vector<int>& boundary) {
            Fingerprint fp;
            fp.part = detail::boundary_components(piece, boundary);
            fp.marks.reserve(boundary.size());
            for (int v : boundary)
                fp.marks.push_back(std::min(piece.degree(v), 2));
            // a vertex of degree 3 can never recover, whatever is glued on
            fp.tags.push_back(detail::max_degree_at_most(piece, 2) ? 0 : 1);
            return fp;
        };
        spec.accepts_fn = [](const Graph& g) {
            return is_forest(g) && detail::max_degree_at_most(g, 2);
        };
    } else if (base == "induced-matching") {
        spec.t = 2;
        spec.fingerprint_fn = [](const Graph& piece, const std::vector<int>& boundary) {
            Fingerprint fp;
            fp.marks.reserve(boundary.size());
            std::vector<char> on_boundary((std::size_t)piece.vertex_count(), 0);
            for (int v : boundary) {
                on_boundary[(std::size_t)v] = 1;
                fp.marks.push_back(std::min(piece.degree(v), 2));
            }
            // dead if an internal vertex is not perfectly matched already or
            // any vertex is oversaturated
            int dead = 0;
            for (int v = 0; v < piece.vertex_count(); ++v) {
                int d = piece.degree(v);
                if (on_boundary[(std::size_t)v] ? d > 1 : d != 1)
                    dead = 1;
            }
            fp.tags.push_back(dead);
            return fp;
        };
        spec.accepts_fn = [](const Graph& g) {
            for (int v = 0; v < g.vertex_count(); ++v)
                if (g.degree(v) != 1)
                    return false;
            return true;
        };
    } else {
        throw InputError("unknown problem: " + base);
    }
    return spec;
}

inline std::vector<std::string> problem_names() {
    return {"mwis", "induced-forest", "induced-linear-forest", "induced-matching"};
}

} // namespace tia
