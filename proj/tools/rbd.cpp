// rbd: edge-coloured graph analysis and rainbow decomposition CLI.
//
// Subcommands: generate, check-colouring, check-regularity, count,
// decompose {factors|matchings|cycles|transversals}, verify.
// Exit codes: 0 pass, 1 verification failure, 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rainbow/decompose.hpp"
#include "rainbow/designs.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/generate.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/partition.hpp"
#include "rainbow/pattern.hpp"
#include "rainbow/regularity.hpp"

using nlohmann::ordered_json;

namespace {

int env_thread_cap() {
    const char* raw = std::getenv("RAINBOW_DECOMP_THREADS");
    if (!raw) return 1;
    const int v = std::atoi(raw);
    return v > 0 ? v : 1;
}

void emit(const ordered_json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw rainbow::ParseError("cannot open " + out_path + " for writing");
        out << text;
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw rainbow::ParseError("cannot open " + out_path + " for writing");
        out << text;
    }
}

rainbow::PatternGraph parse_pattern(const std::string& name, const std::string& inline_edges,
                                    int inline_f) {
    if (inline_edges.empty()) return rainbow::PatternGraph::preset(name);
    std::vector<std::pair<int, int>> edges;
    std::stringstream ss(inline_edges);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto dash = tok.find('-');
        if (dash == std::string::npos)
            throw rainbow::ParseError("pattern edge must look like 'a-b': " + tok);
        edges.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
    }
    int f = inline_f;
    if (f == 0)
        for (const auto& [a, b] : edges) f = std::max({f, a + 1, b + 1});
    return rainbow::PatternGraph::from_edges(f, std::move(edges));
}

ordered_json verify_to_json(const rainbow::VerifyReport& rep) {
    ordered_json j;
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        if (!c.witness.empty()) jc["witness"] = c.witness;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    j["all_pass"] = rep.all_pass;
    j["edge_coverage"] = rep.edge_coverage;
    j["per_factor_coverage"] = rep.per_factor_coverage;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rainbow decomposition toolkit"};
    app.require_subcommand(1);
    bool json_out = false;
    app.add_flag("--json", json_out, "machine-readable output on stdout (default already JSON)");

    std::uint64_t seed = 0;
    std::string in_path, out_path, kind, pattern_name = "k3", pattern_edges, array_path,
                decomp_path;
    int n = 0, g_bound = 0, ell_bound = 1, pattern_f = 0, cycle_len = 12, sample_k = 0;
    double p = 0.5, eps = 0.05, density = 0, alpha = 0.3, delta = 0.2;
    rainbow::DecompConfig cfg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "random seed (recorded in the report)");
        cmd->add_option("--out", out_path, "write the report to this file");
    };

    // generate
    auto* gen = app.add_subcommand("generate", "generate a coloured instance");
    gen->add_option("--kind", kind,
                    "kn-proper | kn-bounded | gnp-coloured | latin-cyclic | latin-random")
        ->required();
    gen->add_option("-n,--n", n, "size")->required();
    gen->add_option("-p,--p", p, "edge probability (gnp)");
    gen->add_option("-g,--g", g_bound, "global colour bound");
    gen->add_option("--ell", ell_bound, "local colour bound");
    add_common(gen);

    // check-colouring
    auto* chkc = app.add_subcommand("check-colouring", "boundedness report");
    chkc->add_option("--in", in_path)->required();
    add_common(chkc);

    // check-regularity
    auto* chkr = app.add_subcommand("check-regularity", "quasirandomness report");
    chkr->add_option("--in", in_path)->required();
    chkr->add_option("--eps", eps, "tolerance");
    chkr->add_option("--density", density, "target density d (0 = empirical)");
    chkr->add_option("--sampled", sample_k, "sample this many pairs instead of all");
    add_common(chkr);

    // count
    auto* cnt = app.add_subcommand("count", "rainbow pattern counts");
    cnt->add_option("--in", in_path)->required();
    cnt->add_option("--pattern", pattern_name, "preset: k2 k3 c4 c5 path2 2k2");
    cnt->add_option("--pattern-edges", pattern_edges, "inline edges, e.g. 0-1,1-2,0-2");
    cnt->add_option("--pattern-f", pattern_f, "vertex count for inline patterns");
    int anchor_vertex = -1;
    std::string anchor_edge;
    cnt->add_option("--anchor-vertex", anchor_vertex);
    cnt->add_option("--anchor-edge", anchor_edge, "u-v");
    add_common(cnt);

    // decompose
    auto* dec = app.add_subcommand("decompose", "run a decomposition pipeline");
    dec->require_subcommand(1);
    auto add_decomp_common = [&](CLI::App* cmd) {
        add_common(cmd);
        cmd->add_option("--budget", cfg.copy_budget, "copy enumeration budget");
        cmd->add_option("--zeta", cfg.zeta, "cleaning tolerance");
        cmd->add_option("--density", cfg.d, "target density (0 = empirical)");
    };
    auto* dfac = dec->add_subcommand("factors", "rainbow near-spanning F-factors");
    dfac->add_option("--in", in_path)->required();
    dfac->add_option("--alpha", alpha);
    dfac->add_option("--pattern", pattern_name);
    dfac->add_option("--pattern-edges", pattern_edges);
    dfac->add_option("--pattern-f", pattern_f);
    dfac->add_flag("--experimental-blocks", cfg.experimental_blocks,
                   "block-structure pipeline skeleton");
    add_decomp_common(dfac);
    auto* dmat = dec->add_subcommand("matchings", "near-spanning rainbow matchings");
    dmat->add_option("--in", in_path)->required();
    dmat->add_option("--delta", delta);
    add_decomp_common(dmat);
    auto* dcyc = dec->add_subcommand("cycles", "near-spanning rainbow cycles");
    dcyc->add_option("--in", in_path)->required();
    dcyc->add_option("--alpha", alpha);
    dcyc->add_option("--cycle-len", cycle_len, "segment length s");
    add_decomp_common(dcyc);
    auto* dtr = dec->add_subcommand("transversals", "array transversals");
    dtr->add_option("--in", array_path)->required();
    dtr->add_option("--delta", delta);
    add_decomp_common(dtr);

    // verify
    auto* ver = app.add_subcommand("verify", "re-verify a decomposition file");
    ver->add_option("--graph", in_path, "graph file (graph decompositions)");
    ver->add_option("--array", array_path, "CSV array (transversal decompositions)");
    ver->add_option("--decomp", decomp_path)->required();
    add_common(ver);

    CLI11_PARSE(app, argc, argv);
    (void)json_out;
    const int threads = env_thread_cap();

    try {
        if (gen->parsed()) {
            if (kind == "kn-proper") {
                rainbow::write_graph_file(out_path.empty() ? "graph.txt" : out_path,
                                          rainbow::generate_kn_proper(n));
            } else if (kind == "kn-bounded") {
                rainbow::write_graph_file(out_path.empty() ? "graph.txt" : out_path,
                                          rainbow::generate_kn_bounded(n, g_bound, ell_bound, seed));
            } else if (kind == "gnp-coloured") {
                rainbow::write_graph_file(
                    out_path.empty() ? "graph.txt" : out_path,
                    rainbow::generate_gnp_coloured(n, p, g_bound, ell_bound, seed));
            } else if (kind == "latin-cyclic") {
                rainbow::write_array_csv(out_path.empty() ? "array.csv" : out_path,
                                         rainbow::generate_latin_cyclic(n));
            } else if (kind == "latin-random") {
                rainbow::write_array_csv(out_path.empty() ? "array.csv" : out_path,
                                         rainbow::generate_latin_random(n, seed));
            } else {
                throw rainbow::ParseError("unknown generator kind '" + kind + "'");
            }
            return 0;
        }

        if (chkc->parsed()) {
            const auto g = rainbow::read_graph_file(in_path);
            const auto rep = rainbow::boundedness(g);
            ordered_json j;
            j["n"] = g.vertex_count();
            j["edges"] = g.edge_count();
            j["colours"] = g.colour_count();
            j["g"] = rep.g;
            j["ell"] = rep.ell;
            j["worst_colour"] = rep.worst_colour;
            j["worst_vertex"] = rep.worst_vertex;
            emit(j, out_path);
            return 0;
        }

        if (chkr->parsed()) {
            const auto g = rainbow::read_graph_file(in_path);
            const double d = density > 0 ? density : g.density();
            rainbow::SampleSpec mode;
            if (sample_k > 0) mode = {sample_k, seed};
            const auto rep = rainbow::quasirandom_check(g, eps, d, mode);
            ordered_json j;
            j["eps"] = rep.eps;
            j["d"] = rep.d;
            j["d_hat"] = rep.d_hat;
            j["eps_degree"] = rep.eps_degree;
            j["bad_pair_count"] = rep.bad_pair_count;
            j["pairs_checked"] = rep.pairs_checked;
            j["sampled"] = rep.sampled;
            j["seed"] = rep.seed;
            j["passes"] = rep.passes;
            emit(j, out_path);
            return rep.passes ? 0 : 1;
        }

        if (cnt->parsed()) {
            const auto g = rainbow::read_graph_file(in_path);
            const auto fpat = parse_pattern(pattern_name, pattern_edges, pattern_f);
            rainbow::Anchor anchor = rainbow::Anchor::none();
            if (anchor_vertex >= 0) anchor = rainbow::Anchor::at_vertex(anchor_vertex);
            if (!anchor_edge.empty()) {
                const auto dash = anchor_edge.find('-');
                if (dash == std::string::npos)
                    throw rainbow::ParseError("--anchor-edge must look like u-v");
                anchor = rainbow::Anchor::at_edge(std::stoi(anchor_edge.substr(0, dash)),
                                                  std::stoi(anchor_edge.substr(dash + 1)));
            }
            const auto counts = rainbow::count_pattern(g, fpat, anchor);
            const double est = rainbow::estimate_rainbow(g.vertex_count(), g.density(), fpat,
                                                         anchor.kind);
            ordered_json j;
            j["pattern_f"] = fpat.f;
            j["pattern_h"] = fpat.h();
            j["aut"] = fpat.aut;
            j["a_value"] = fpat.a_value;
            j["rainbow"] = counts.rainbow;
            j["nonrainbow"] = counts.nonrainbow;
            j["total"] = counts.total;
            j["estimate"] = est;
            j["seed"] = seed;
            emit(j, out_path);
            return 0;
        }

        if (dec->parsed()) {
            rainbow::Decomposition result;
            if (dfac->parsed()) {
                const auto g = rainbow::read_graph_file(in_path);
                const auto fpat = parse_pattern(pattern_name, pattern_edges, pattern_f);
                result = rainbow::decompose_f_factors(g, fpat, alpha, seed, cfg);
                const auto rep = rainbow::verify_decomposition(g, result);
                emit_text(rainbow::decomposition_to_json(result), out_path);
                return rep.all_pass ? 0 : 1;
            }
            if (dmat->parsed()) {
                const auto g = rainbow::read_graph_file(in_path);
                result = rainbow::decompose_matchings_sparse(g, delta, seed, cfg);
                const auto rep = rainbow::verify_decomposition(g, result);
                emit_text(rainbow::decomposition_to_json(result), out_path);
                return rep.all_pass ? 0 : 1;
            }
            if (dcyc->parsed()) {
                const auto g = rainbow::read_graph_file(in_path);
                result = rainbow::decompose_near_spanning_cycles(g, alpha, cycle_len, seed, cfg);
                const auto rep = rainbow::verify_decomposition(g, result);
                emit_text(rainbow::decomposition_to_json(result), out_path);
                return rep.all_pass ? 0 : 1;
            }
            const auto a = rainbow::read_array_csv(array_path);
            result = rainbow::decompose_transversals(a, delta, seed, cfg);
            const auto rep = rainbow::verify_transversal_decomposition(a, result);
            emit_text(rainbow::decomposition_to_json(result), out_path);
            return rep.all_pass ? 0 : 1;
        }

        if (ver->parsed()) {
            std::ifstream in(decomp_path);
            if (!in) throw rainbow::ParseError("cannot open " + decomp_path);
            std::stringstream buf;
            buf << in.rdbuf();
            const auto d = rainbow::decomposition_from_json(buf.str());
            rainbow::VerifyReport rep;
            if (d.kind == rainbow::Decomposition::Kind::transversal) {
                if (array_path.empty())
                    throw rainbow::ParseError("transversal verification needs --array");
                rep = rainbow::verify_transversal_decomposition(
                    rainbow::read_array_csv(array_path), d);
            } else {
                if (in_path.empty()) throw rainbow::ParseError("verification needs --graph");
                rep = rainbow::verify_decomposition(rainbow::read_graph_file(in_path), d);
            }
            ordered_json j = verify_to_json(rep);
            j["threads"] = threads;
            emit(j, out_path);
            return rep.all_pass ? 0 : 1;
        }
    } catch (const rainbow::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
