#pragma once

#include <cstdint>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

/// pairs == 0 means exact enumeration; otherwise `pairs` uniform samples
/// drawn from the given seed.
struct SampleSpec {
    long long pairs = 0;
    std::uint64_t seed = 0;
    bool exact() const { return pairs == 0; }
};

struct QuasirandomReport {
    double d = 0;              // target density
    double eps = 0;
    double d_hat = 0;          // empirical density
    double eps_degree = 0;     // max_v |d(v)/n - d|
    long long bad_pair_count = 0; // pairs with codegree outside (d^2 +- eps) n;
                                  // an unbiased estimate when sampled
    long long pairs_checked = 0;
    bool sampled = false;
    std::uint64_t seed = 0;
    bool passes = false;       // eps_degree <= eps and bad_pair_count <= eps n^2
};

QuasirandomReport quasirandom_check(const EdgeColouredGraph& g, double eps, double d,
                                    SampleSpec mode = {});

struct SuperregularReport {
    double d = 0;
    double eps = 0;
    bool degree_ok = false;
    double worst_degree_dev = 0;       // max |d(u)/|opposite part| - d|
    bool density_ok = false;
    double worst_density_dev = 0;      // max |e(X,Y)/(|X||Y|) - d| seen
    long long bad_codegree_pairs = 0;  // same-side pairs with wrong codegree across
    long long bad_codegree_allowed = 0;
    bool sampled = false;              // true when subset enumeration was infeasible
    long long samples_tried = 0;
    std::uint64_t seed = 0;
    bool passes = false;
};

/// Superregularity of the bipartite graph G[U, W]. Exact subset enumeration
/// when min(|U|,|W|) <= 14; above that a sampled surrogate (random subset
/// pairs at the threshold sizes, with a sampling-noise allowance) combined
/// with the codegree criterion behind the almost-quasirandom theorem.
SuperregularReport superregular_check(const EdgeColouredGraph& g, const std::vector<int>& u_side,
                                      const std::vector<int>& w_side, double eps, double d,
                                      SampleSpec mode = {});

enum class IrKind { codegree, partite_codegree, colour };

struct IrregularityGraph {
    int n = 0;
    IrKind kind = IrKind::codegree;
    double eps = 0;
    double d = 0;
    long long ell = 0;
    std::vector<std::pair<int, int>> edges; // bad pairs, u < v
    std::vector<int> degree;                 // on V(G)
    // partite kind only: the paper conditions same-part pairs as well, so we
    // report both sides separately.
    long long same_part_edge_count = 0;
    long long cross_part_edge_count = 0;

    long long edge_count() const { return static_cast<long long>(edges.size()); }
    int max_degree() const;
};

IrregularityGraph irregularity_graph(const EdgeColouredGraph& g, double eps, double d);

/// Partite variant: pair u,v (u in V_j, v in V_j') is bad when the codegree
/// into some third part V_j'' misses (d^2 +- eps)|V_j''|.
IrregularityGraph irregularity_graph_partite(const EdgeColouredGraph& g,
                                             const std::vector<int>& part_of, int parts,
                                             double eps, double d);

/// Pairs with monochromatic codegree >= ell_threshold.
IrregularityGraph colour_irregularity_graph(const EdgeColouredGraph& g, long long ell_threshold);

/// G minus every edge lying in Ir_G(eps, d) or Ir^phi_G(ell_threshold).
EdgeColouredGraph clean_graph(const EdgeColouredGraph& g, double eps, double d,
                              long long ell_threshold);

} // namespace rainbow
