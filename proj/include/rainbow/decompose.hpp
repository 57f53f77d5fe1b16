#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/hypergraph.hpp"
#include "rainbow/pattern.hpp"

namespace rainbow {

struct DecompConfig {
    double d = 0;                 // target density; 0 = empirical
    double zeta = 0.05;           // cleaning / audit tolerance
    double eps_audit = 0.1;       // the eps used in the lemma-condition audit
    long long copy_budget = 200000;
    double hyper_delta = 0.25;    // slack handed to the hypergraph matching stage
    int defect_attempts = 3;
    double inflation_cap = 1.6;
    // cycle pipeline
    double gamma = 0.12;          // colour / linker-part split
    double delta1 = 0.06;         // small vertex part probability
    double special_delta = 0.1;   // property A/B threshold
    int qr_retries = 8;
    int link_restarts = 30;
    int special_retries = 20;
    // transversals
    int completion_passes = 50;
    // block-structure skeleton
    bool experimental_blocks = false;
};

/// Auxiliary hypergraph of the random-F-decomposition lemma: one vertex per
/// graph edge, per (vertex, layer) and per (colour, layer); one hyperedge of
/// size f + 2h per rainbow copy, in its random layer.
struct AuxHypergraph {
    MultiHypergraph h;
    long long t = 0;
    long long e_base = 0, v_base = 0, c_base = 0;
    int n = 0, m = 0;
    std::vector<int> layer_of; // per family member

    long long edge_vertex(int edge_id) const { return e_base + edge_id; }
    long long vertex_vertex(int v, int layer) const { return v_base + static_cast<long long>(v) * t + layer; }
    long long colour_vertex(int c, int layer) const { return c_base + static_cast<long long>(c) * t + layer; }
};

AuxHypergraph build_aux_hypergraph(const EdgeColouredGraph& g,
                                   const std::vector<std::vector<int>>& family, long long t,
                                   std::uint64_t seed);

/// Exact audit of the conditions the random-F-decomposition lemma places on
/// the copy family.
struct FamilyAudit {
    long long family_size = 0;
    double t_star = 0; // f|E| / (h|V|)
    long long min_f_v = 0, max_f_v = 0;
    long long max_f_vv = 0, max_f_vc = 0, max_f_cc = 0, max_f_c = 0;
    long long min_f_e = 0, max_f_e = 0;
    long long max_f_ee = 0;
    bool a1 = false, a2 = false, a3 = false, a4 = false, a5 = false;
    double eps_used = 0;
};

FamilyAudit audit_family(const EdgeColouredGraph& g, const std::vector<std::vector<int>>& family,
                         int f, int h, double eps, long long t);

struct Factor {
    std::vector<std::array<int, 2>> edges; // vertex pairs; (row, col) for transversals
    std::vector<long long> colours;        // original colour labels, aligned with edges
    std::vector<std::vector<int>> copies;  // indices into `edges`, one list per copy
    long long vertex_coverage = 0;
    bool meets_target = true;
};

struct Decomposition {
    enum class Kind { factor, cycle, matching, transversal };
    Kind kind = Kind::factor;
    int pattern_f = 0; // factor kind: the pattern, for structural verification
    std::vector<std::pair<int, int>> pattern_edges;
    std::vector<Factor> factors;
    long long instance_edges = 0;
    double edge_coverage = 0;
    long long target_count = 0;
    long long t_layers = 0;
    long long dropped_factors = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> log;
};

std::string decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const std::string& text);

Decomposition decompose_f_factors(const EdgeColouredGraph& g, const PatternGraph& fpat,
                                  double alpha, std::uint64_t seed, const DecompConfig& cfg = {});

Decomposition decompose_matchings_sparse(const EdgeColouredGraph& g, double delta,
                                         std::uint64_t seed, const DecompConfig& cfg = {});

Decomposition decompose_near_spanning_cycles(const EdgeColouredGraph& g, double alpha, int s,
                                             std::uint64_t seed, const DecompConfig& cfg = {});

Decomposition decompose_transversals(const std::vector<std::vector<long long>>& array,
                                     double delta, std::uint64_t seed,
                                     const DecompConfig& cfg = {});

/// Vertex-disjoint rainbow P3 linkages routed V1 then V2, joining fragment
/// endpoint x_j to y_{j+1} (cyclically); stands in for the rainbow blow-up
/// lemma. Randomized greedy with full restarts.
struct Fragment {
    int x = -1, y = -1;
};
struct LinkPath {
    int w1 = -1, w2 = -1;
    int e1 = -1, e2 = -1, e3 = -1; // edge ids in the linker graph
};
std::vector<LinkPath> link_fragments(const EdgeColouredGraph& linker,
                                     const std::vector<Fragment>& fragments,
                                     const std::vector<int>& v1, const std::vector<int>& v2,
                                     const std::vector<char>& forbidden_colours,
                                     std::vector<char>& used_colours,
                                     std::vector<char>& used_edges, std::uint64_t seed,
                                     int restarts);

struct VerifyCheck {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = true;
    double edge_coverage = 0;
    std::vector<double> per_factor_coverage;

    void add(const std::string& name, bool pass, const std::string& witness = "");
};

VerifyReport verify_decomposition(const EdgeColouredGraph& g, const Decomposition& d);
VerifyReport verify_transversal_decomposition(const std::vector<std::vector<long long>>& array,
                                              const Decomposition& d);

} // namespace rainbow
