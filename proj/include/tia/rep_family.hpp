#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tia/errors.hpp"
#include "tia/graph.hpp"
#include "tia/rational.hpp"
#include "tia/signature.hpp"
#include "tia/test_hooks.hpp"

namespace tia {

// One feasible partial solution: a vertex set containing the boundary, its
// exact weight, and (once computed) its canonical signature key.
struct FamilyEntry {
    VertexSet set;
    Rational weight;
    std::string signature_key;
};

inline FamilyEntry make_entry(const Graph& g, VertexSet set) {
    FamilyEntry e;
    e.weight = g.weight_of(set);
    e.set = std::move(set);
    return e;
}

using Family = std::vector<FamilyEntry>;

struct MergeRecord {
    VertexSet kept;
    VertexSet dropped;
    VertexSet boundary;
};
using MergeLog = std::vector<MergeRecord>;

// Canonical-signature keys for (piece, boundary) pairs, memoized; safe for
// concurrent use. Can optionally retain one sample Signature per canonical
// key for debug dumps.
class SignatureKeyCache {
  public:
    void enable_collection() { collect_ = true; }

    std::string key(const ProblemSpec& spec, const Graph& g, const VertexSet& f,
                    const VertexSet& b, int ell) {
        std::string id = f.str() + "|" + b.str();
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = map_.find(id);
            if (it != map_.end())
                return it->second;
        }
        Signature sig = compute_signature(spec, g, f, b, ell);
        std::string value = canonicalize(sig).bytes;
        std::lock_guard<std::mutex> lock(mu_);
        if (collect_)
            samples_.emplace(value, sig);
        map_.emplace(std::move(id), value);
        return value;
    }

    const std::map<std::string, Signature>& samples() const { return samples_; }

  private:
    std::mutex mu_;
    bool collect_ = false;
    std::unordered_map<std::string, std::string> map_;
    std::map<std::string, Signature> samples_;
};

// Collapses a family of feasible sets to one maximum-weight representative
// per canonical signature (ties to the lexicographically smallest set).
// Output is a subset of the input, sorted by vertex set.
inline Family compress(const ProblemSpec& spec, const Graph& g, const VertexSet& b,
                       Family family, int ell = -1,
                       SignatureKeyCache* cache = nullptr, MergeLog* log = nullptr) {
    if (ell < 0)
        ell = std::max(1, b.size());
    SignatureKeyCache local_cache;
    if (!cache)
        cache = &local_cache;
    for (auto& e : family) {
        if (!b.subset_of(e.set))
            throw ContractError("compress: entry " + e.set.str() +
                                " does not contain boundary " + b.str());
        if (!(g.weight_of(e.set) == e.weight))
            throw ContractError("compress: entry " + e.set.str() +
                                " carries a stale weight");
        if (!treewidth_less_than(induced_subgraph(g, e.set).graph, spec.t))
            throw ContractError("compress: entry " + e.set.str() +
                                " has treewidth at least " + std::to_string(spec.t));
    }
    // duplicate sets collapse first
    std::sort(family.begin(), family.end(),
              [](const FamilyEntry& x, const FamilyEntry& y) { return x.set < y.set; });
    family.erase(std::unique(family.begin(), family.end(),
                             [](const FamilyEntry& x, const FamilyEntry& y) {
                                 return x.set == y.set;
                             }),
                 family.end());

    // keys are only meaningful for the boundary they were computed against,
    // so resolve through the (set, boundary)-keyed cache every time
    for (auto& e : family)
        e.signature_key = cache->key(spec, g, e.set, b, ell);

    std::unordered_map<std::string, std::size_t> winner;
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto [it, fresh] = winner.emplace(family[i].signature_key, i);
        if (fresh)
            continue;
        const FamilyEntry& cur = family[it->second];
        const FamilyEntry& cand = family[i];
        bool replace;
        if (test_hooks::faults().skip_compress_weight_compare) {
            replace = cur.set < cand.set;
        } else {
            replace = cur.weight < cand.weight ||
                      (cur.weight == cand.weight && cand.set < cur.set);
        }
        if (replace)
            it->second = i;
    }
    Family out;
    out.reserve(winner.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto it = winner.find(family[i].signature_key);
        if (it->second == i)
            out.push_back(family[i]);
        else if (log)
            log->push_back({family[it->second].set, family[i].set, b});
    }
    std::sort(out.begin(), out.end(),
              [](const FamilyEntry& x, const FamilyEntry& y) { return x.set < y.set; });
    return out;
}

} // namespace tia
