#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tia/decomposition.hpp"
#include "tia/solver.hpp"

namespace tia {

// Result JSON, shared by the CLI and the test harnesses so that byte-level
// determinism checks compare the real output format. Weights are exact
// rational strings; vertices are 1-indexed like the file formats.
inline nlohmann::json solution_json(const SolveResult& result, bool with_timing) {
    nlohmann::json j;
    j["problem"] = result.problem;
    j["k"] = result.k;
    j["t"] = result.t;
    j["ell"] = result.ell;
    if (result.solution) {
        j["status"] = "solved";
        j["weight"] = result.solution->weight.str();
        std::vector<int> verts;
        for (int v : result.solution->set)
            verts.push_back(v + 1);
        j["vertices"] = verts;
        j["certificate"] = {{"treewidth_below_t", result.solution->treewidth_ok},
                            {"accepted", result.solution->accepts_ok}};
    } else {
        j["status"] = "infeasible";
    }
    nlohmann::json stats;
    stats["nodes"] = result.stats.nodes;
    stats["keys"] = result.stats.keys;
    stats["max_family_size"] = result.stats.max_family_size;
    stats["distinct_signatures"] = result.stats.distinct_signatures;
    if (with_timing)
        stats["wall_time_ms"] = result.stats.wall_ms;
    j["stats"] = stats;
    return j;
}

inline nlohmann::json validation_json(const ValidationReport& report) {
    nlohmann::json j;
    j["valid"] = report.valid;
    j["width"] = report.width;
    j["alpha"] = report.alpha;
    j["node_count"] = report.node_count;
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"axiom", v.axiom}, {"witness", v.witness}});
    j["violations"] = violations;
    return j;
}

} // namespace tia
