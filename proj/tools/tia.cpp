// Command-line front end: solve / validate / decompose / gen / oracle / bench.
//
// Exit codes: 0 success (solve: solution found; validate: decomposition
// valid; oracle: all checks passed), 1 input or usage error, 2 negative
// result (solve: infeasible; validate: violations found; oracle: mismatch).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tia/builders.hpp"
#include "tia/decomposition.hpp"
#include "tia/generate.hpp"
#include "tia/graph.hpp"
#include "tia/io.hpp"
#include "tia/oracle.hpp"
#include "tia/problems.hpp"
#include "tia/report.hpp"
#include "tia/signature.hpp"
#include "tia/solver.hpp"

using nlohmann::json;

namespace {

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out)
            throw tia::InputError("cannot write " + out_path);
        out << text;
    }
}

tia::Graph load_graph(const std::string& graph_path, const std::string& weights_path) {
    tia::Graph g = tia::read_gr_file(graph_path);
    if (!weights_path.empty())
        g = g.with_weights(tia::read_weights_file(weights_path, g.vertex_count()));
    return g;
}

struct BuiltDecomposition {
    tia::TreeDecomposition td;
    std::vector<int> bag_clique_bound; // separator builders only
};

BuiltDecomposition run_builder(const tia::Graph& g, const std::string& builder,
                               const std::string& intervals_path,
                               const tia::Rational& beta) {
    if (builder == "clique-tree")
        return {tia::clique_tree_chordal(g), {}};
    if (builder == "separator-greedy") {
        auto result = tia::build_from_separators(
            g,
            [&beta](const tia::Graph& sub, const std::vector<int>&) {
                return tia::greedy_clique_separator(sub, beta);
            },
            beta);
        return {std::move(result.td), std::move(result.bag_clique_bound)};
    }
    if (builder == "separator-interval") {
        if (intervals_path.empty())
            throw tia::InputError("builder separator-interval needs --intervals");
        auto intervals = tia::read_intervals_file(intervals_path);
        if ((int)intervals.size() != g.vertex_count())
            throw tia::InputError("interval count does not match the graph");
        auto result = tia::build_from_separators(
            g,
            [&intervals, &beta](const tia::Graph&, const std::vector<int>& ids) {
                std::vector<std::pair<tia::Rational, tia::Rational>> sub;
                for (int v : ids)
                    sub.push_back(intervals[(std::size_t)v]);
                return tia::interval_clique_separator(sub, beta);
            },
            beta);
        return {std::move(result.td), std::move(result.bag_clique_bound)};
    }
    if (builder == "exact")
        return {tia::exact_tree_alpha(g).td, {}};
    throw tia::InputError("unknown builder: " + builder +
                          " (expected clique-tree, separator-greedy, "
                          "separator-interval or exact)");
}

json signature_dump_json(const tia::SolveResult& result) {
    json arr = json::array();
    for (const auto& [key, entry] : result.signatures) {
        json sig;
        sig["key"] = key;
        sig["entries"] = entry.count;
        sig["pieces"] = entry.sample.piece_count;
        sig["boundary_slots"] = entry.sample.boundary_size;
        sig["slots"] = entry.sample.slot_count;
        json edges = json::array();
        for (auto [a, b] : entry.sample.h_edges)
            edges.push_back({a, b});
        sig["h_edges"] = edges;
        json pieces = json::array();
        for (const auto& piece : entry.sample.pieces) {
            json p;
            p["slots"] = piece.slots;
            p["fingerprint"] = piece.type.str();
            pieces.push_back(p);
        }
        sig["piece_types"] = pieces;
        arr.push_back(sig);
    }
    return arr;
}

int cmd_solve(const std::string& graph_path, const std::string& weights_path,
              const std::string& td_path, const std::string& builder,
              const std::string& intervals_path, const std::string& beta_text,
              const std::string& problem, int k, int threads,
              const std::string& out_path, const std::string& dump_path,
              bool no_timing, bool debug_checks) {
    tia::Graph g = load_graph(graph_path, weights_path);
    tia::ProblemSpec spec = tia::problem_by_name(problem);
    tia::TreeDecomposition td;
    if (!td_path.empty()) {
        td = tia::read_td_file(td_path).td;
    } else if (!builder.empty()) {
        td = run_builder(g, builder, intervals_path, tia::Rational::parse(beta_text)).td;
    } else {
        throw tia::InputError("need --td or --builder");
    }
    int cap = std::max(256, g.vertex_count());
    if (k <= 0)
        k = std::max(1, tia::alpha_of_decomposition(g, td, cap));
    tia::SolveOptions opt;
    opt.threads = threads;
    opt.debug_checks = debug_checks;
    opt.independence_cap = cap;
    opt.collect_signatures = !dump_path.empty();
    tia::SolveResult result = tia::solve(g, td, spec, k, opt);
    emit(tia::solution_json(result, !no_timing), out_path);
    if (!dump_path.empty()) {
        std::ofstream dump(dump_path);
        if (!dump)
            throw tia::InputError("cannot write " + dump_path);
        dump << signature_dump_json(result).dump(2) << "\n";
    }
    return result.solution ? 0 : 2;
}

int cmd_validate(const std::string& graph_path, const std::string& td_path,
                 int alpha_cap, const std::string& out_path) {
    tia::Graph g = tia::read_gr_file(graph_path);
    tia::TdFile file = tia::read_td_file(td_path);
    tia::ValidateOptions opt;
    opt.independence_cap = alpha_cap;
    tia::ValidationReport report = tia::validate(g, file.td, opt);
    json j = tia::validation_json(report);
    if (file.claimed_alpha) {
        j["claimed_alpha"] = *file.claimed_alpha;
        j["claimed_alpha_ok"] = report.alpha <= *file.claimed_alpha;
    }
    emit(j, out_path);
    return report.valid ? 0 : 2;
}

int cmd_decompose(const std::string& graph_path, const std::string& builder,
                  const std::string& intervals_path, const std::string& beta_text,
                  bool claim_alpha, const std::string& out_path) {
    tia::Graph g = tia::read_gr_file(graph_path);
    BuiltDecomposition built =
        run_builder(g, builder, intervals_path, tia::Rational::parse(beta_text));
    int cap = std::max(256, g.vertex_count());
    int alpha = tia::alpha_of_decomposition(g, built.td, cap);
    if (out_path.empty())
        throw tia::InputError("decompose needs --out");
    std::ofstream out(out_path);
    if (!out)
        throw tia::InputError("cannot write " + out_path);
    tia::write_td(out, built.td, g.vertex_count(),
                  claim_alpha ? std::optional<int>(alpha) : std::nullopt,
                  {"builder " + builder});
    json j;
    j["builder"] = builder;
    j["nodes"] = built.td.node_count();
    j["width"] = built.td.width();
    j["alpha"] = alpha;
    if (!built.bag_clique_bound.empty()) {
        int worst = 0;
        for (int b : built.bag_clique_bound)
            worst = std::max(worst, b);
        j["max_clique_stack_bound"] = worst;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_gen(const std::string& family, int n, double p, int rows, int cols,
            std::uint64_t seed, bool random_weights, const std::string& out_path,
            const std::string& intervals_out, const std::string& weights_out) {
    tia::Rng rng(seed);
    tia::Graph g(0, {});
    std::vector<std::pair<tia::Rational, tia::Rational>> intervals;
    if (family == "gnp") {
        g = tia::gen_gnp(n, p, rng);
    } else if (family == "chordal") {
        g = tia::gen_chordal(n, rng);
    } else if (family == "interval") {
        intervals = tia::gen_intervals(n, rng);
        g = tia::interval_graph(intervals);
    } else if (family == "grid") {
        int r = rows > 0 ? rows : n;
        int c = cols > 0 ? cols : n;
        g = tia::gen_grid(r, c);
    } else if (family == "cycle") {
        g = tia::gen_cycle(n);
    } else if (family == "path") {
        g = tia::gen_path(n);
    } else {
        throw tia::InputError("unknown family: " + family +
                              " (expected gnp, chordal, interval, grid, cycle, path)");
    }
    if (random_weights)
        g = g.with_weights(tia::gen_weights(g.vertex_count(), rng));
    if (out_path.empty())
        throw tia::InputError("gen needs --out");
    std::ofstream out(out_path);
    if (!out)
        throw tia::InputError("cannot write " + out_path);
    std::ostringstream meta;
    meta << "family " << family << " seed " << seed;
    tia::write_gr(out, g, {meta.str()});
    if (!intervals_out.empty()) {
        if (family != "interval")
            throw tia::InputError("--intervals-out only applies to the interval family");
        std::ofstream iv(intervals_out);
        if (!iv)
            throw tia::InputError("cannot write " + intervals_out);
        tia::write_intervals(iv, intervals);
    }
    if (!weights_out.empty()) {
        std::ofstream wf(weights_out);
        if (!wf)
            throw tia::InputError("cannot write " + weights_out);
        tia::write_weights(wf, g);
    }
    json j;
    j["family"] = family;
    j["n"] = g.vertex_count();
    j["m"] = g.edge_count();
    j["seed"] = seed;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_oracle(std::uint64_t seed, int instances, bool with_mod, bool debug_checks,
               const std::string& out_path) {
    tia::CrossCheckOptions opt;
    opt.seed = seed;
    opt.instances = instances;
    opt.with_mod = with_mod;
    opt.debug_checks = debug_checks;
    tia::CrossCheckReport report = tia::cross_check_suite(opt);
    std::ostringstream body;
    for (const auto& line : report.lines)
        body << line << "\n";
    body << "{\"summary\":{\"seed\":" << seed << ",\"checks\":" << report.checks
         << ",\"failures\":" << report.failures << "}}\n";
    std::cout << body.str();
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out)
            throw tia::InputError("cannot write " + out_path);
        out << body.str();
    }
    return report.all_passed() ? 0 : 2;
}

int cmd_bench(const std::string& problem, const std::string& n_list,
              const std::string& k_list, std::uint64_t seed,
              const std::string& out_path) {
    std::vector<int> ns, ks;
    auto parse_list = [](const std::string& text, std::vector<int>& out) {
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ','))
            out.push_back(std::stoi(item));
    };
    parse_list(n_list, ns);
    parse_list(k_list, ks);
    tia::ProblemSpec spec = tia::problem_by_name(problem);
    std::ostringstream csv;
    csv << "n,k,t,problem,wall_ms,max_family_size,distinct_signatures\n";
    for (int k : ks) {
        if (k != 1 && k != 2)
            throw tia::InputError("bench supports k=1 (chordal) and k=2 (cycles)");
        for (int n : ns) {
            tia::Rng rng(seed ^ (std::uint64_t)(1000 * k + n));
            tia::Graph g(0, {});
            tia::TreeDecomposition td;
            if (k == 1) {
                g = tia::gen_chordal(n, rng);
                td = tia::clique_tree_chordal(g);
            } else {
                g = tia::gen_cycle(n);
                td = tia::fan_decomposition_of_cycle(n);
            }
            g = g.with_weights(tia::gen_weights(n, rng));
            tia::SolveResult result = tia::solve(g, td, spec, k);
            csv << n << "," << k << "," << spec.t << "," << problem << ","
                << result.stats.wall_ms << "," << result.stats.max_family_size << ","
                << result.stats.distinct_signatures << "\n";
        }
    }
    std::cout << csv.str();
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out)
            throw tia::InputError("cannot write " + out_path);
        out << csv.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum-weight induced subgraph solver over tree decompositions "
                 "of bounded independence number"};
    app.require_subcommand(1);

    // solve
    std::string graph_path, weights_path, td_path, builder, intervals_path;
    std::string beta_text = "2/3", problem = "mwis", out_path, dump_path;
    int k = 0, threads = 1, alpha_cap = 64;
    bool no_timing = false, debug_checks = false;
    auto* solve = app.add_subcommand("solve", "solve a problem on a graph");
    solve->add_option("--graph", graph_path, ".gr input")->required();
    solve->add_option("--weights", weights_path, "weight sidecar file");
    solve->add_option("--td", td_path, ".td decomposition input");
    solve->add_option("--builder", builder,
                      "build the decomposition (clique-tree, separator-greedy, "
                      "separator-interval, exact)");
    solve->add_option("--intervals", intervals_path, "interval file for the "
                                                     "separator-interval builder");
    solve->add_option("--beta", beta_text, "separator balance (default 2/3)");
    solve->add_option("--problem", problem,
                      "mwis | induced-forest | induced-linear-forest | "
                      "induced-matching, optionally @mod<p>=<r>");
    solve->add_option("--k", k, "independence bound (default: computed)");
    solve->add_option("--threads", threads, "worker threads");
    solve->add_option("--out", out_path, "also write the result JSON here");
    solve->add_option("--dump-signatures", dump_path, "write signature debug JSON");
    solve->add_flag("--no-timing", no_timing, "omit wall_time_ms from the JSON");
    solve->add_flag("--debug-checks", debug_checks, "re-verify table invariants");

    // validate
    std::string v_graph, v_td, v_out;
    auto* validate = app.add_subcommand("validate", "check a decomposition");
    validate->add_option("--graph", v_graph, ".gr input")->required();
    validate->add_option("--td", v_td, ".td input")->required();
    validate->add_option("--alpha-cap", alpha_cap, "independence computation cap");
    validate->add_option("--out", v_out, "also write the report JSON here");

    // decompose
    std::string d_graph, d_builder, d_intervals, d_beta = "2/3", d_out;
    bool d_claim = false;
    auto* decompose = app.add_subcommand("decompose", "build and write a decomposition");
    decompose->add_option("--graph", d_graph, ".gr input")->required();
    decompose->add_option("--builder", d_builder, "builder name")->required();
    decompose->add_option("--intervals", d_intervals, "interval file");
    decompose->add_option("--beta", d_beta, "separator balance");
    decompose->add_flag("--claim-alpha", d_claim, "record the alpha in the .td");
    decompose->add_option("--out", d_out, "output .td path")->required();

    // gen
    std::string g_family, g_out, g_intervals_out, g_weights_out;
    int g_n = 10, g_rows = 0, g_cols = 0;
    double g_p = 0.5;
    std::uint64_t g_seed = 1;
    bool g_random_weights = false;
    auto* gen = app.add_subcommand("gen", "generate an instance");
    gen->add_option("family", g_family,
                    "gnp | chordal | interval | grid | cycle | path")
        ->required();
    gen->add_option("--n", g_n, "vertex count");
    gen->add_option("--p", g_p, "edge probability (gnp)");
    gen->add_option("--rows", g_rows, "grid rows");
    gen->add_option("--cols", g_cols, "grid columns");
    gen->add_option("--seed", g_seed, "random seed");
    gen->add_flag("--random-weights", g_random_weights, "attach random weights");
    gen->add_option("--out", g_out, "output .gr path")->required();
    gen->add_option("--intervals-out", g_intervals_out, "write the interval model");
    gen->add_option("--weights-out", g_weights_out, "write the weight sidecar");

    // oracle
    std::uint64_t o_seed = 1;
    int o_instances = 10;
    bool o_no_mod = false, o_debug = false;
    std::string o_out;
    auto* oracle = app.add_subcommand("oracle", "cross-check solver vs brute force");
    oracle->add_option("--seed", o_seed, "random seed");
    oracle->add_option("--instances", o_instances, "instances per graph family");
    oracle->add_flag("--no-mod", o_no_mod, "skip the @mod2 plugin variants");
    oracle->add_flag("--debug-checks", o_debug, "re-verify table invariants");
    oracle->add_option("--out", o_out, "also write the JSON-lines report here");

    // bench
    std::string b_problem = "induced-forest", b_ns = "10,15,20,25,30,35,40";
    std::string b_ks = "1,2", b_out;
    std::uint64_t b_seed = 1;
    auto* bench = app.add_subcommand("bench", "scaling runs, CSV output");
    bench->add_option("--problem", b_problem, "plugin name");
    bench->add_option("--n-list", b_ns, "comma-separated sizes");
    bench->add_option("--k-list", b_ks, "comma-separated k values (1 and/or 2)");
    bench->add_option("--seed", b_seed, "random seed");
    bench->add_option("--out", b_out, "also write the CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve)
            return cmd_solve(graph_path, weights_path, td_path, builder,
                             intervals_path, beta_text, problem, k, threads, out_path,
                             dump_path, no_timing, debug_checks);
        if (*validate)
            return cmd_validate(v_graph, v_td, alpha_cap, v_out);
        if (*decompose)
            return cmd_decompose(d_graph, d_builder, d_intervals, d_beta, d_claim,
                                 d_out);
        if (*gen)
            return cmd_gen(g_family, g_n, g_p, g_rows, g_cols, g_seed,
                           g_random_weights, g_out, g_intervals_out, g_weights_out);
        if (*oracle)
            return cmd_oracle(o_seed, o_instances, !o_no_mod, o_debug, o_out);
        if (*bench)
            return cmd_bench(b_problem, b_ns, b_ks, b_seed, b_out);
    } catch (const tia::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const tia::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 1;
    } catch (const tia::ContractError& e) {
        std::cerr << "internal contract violation: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
