#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rainbow {

/// r-uniform hypergraph with multi-edges kept as distinct indexed objects.
/// Degree and codegree both count multiplicity. Immutable after build().
class MultiHypergraph {
public:
    static MultiHypergraph build(int n, int r, std::vector<std::vector<int>> edges);

    int vertex_count() const { return n_; }
    int uniformity() const { return r_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<int>& edge(int id) const { return edges_[id]; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }
    const std::vector<int>& incident(int v) const { return incidence_[v]; }
    int degree(int v) const { return static_cast<int>(incidence_[v].size()); }

    int max_degree() const { return delta_; }       // Delta
    long long max_codegree() const;                 // Delta_2, computed lazily and cached
    long long codegree(int u, int v) const;

private:
    int n_ = 0;
    int r_ = 0;
    std::vector<std::vector<int>> edges_;
    std::vector<std::vector<int>> incidence_;
    int delta_ = 0;
    mutable long long delta2_ = -1;
};

MultiHypergraph read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const MultiHypergraph& h);

struct MatchingFamily {
    enum class Origin { partition, defect_family };
    Origin origin = Origin::partition;
    std::vector<std::vector<int>> matchings; // edge-id lists
    std::vector<long long> coverage;         // vertices covered (within V for defect families)
    long long delta = 0;                     // Delta of the source hypergraph
    long long target = 0;                    // (1+delta)Delta or (1-delta)Delta as relevant
    long long cap = 0;                       // hard cap that applied (partition origin)
};

struct NibbleConfig {
    double theta = 0.1;        // bite size
    double theta_floor = 0.01; // close the matching when bites get this fine
    int max_rounds = 400;      // safety stop per matching
};

/// Partitions E(H) into matchings: iterative nibble (sample each eligible
/// edge with probability theta/Delta_current, commit the clash-free survivors
/// in canonical index order, extend to a maximal matching), then a greedy
/// first-fit pass once the surviving degree drops to log N. The result is
/// always a true partition; the matching count is capped by
/// inflation_cap * max(Delta, ceil(log N)).
MatchingFamily nibble_partition(const MultiHypergraph& h, double delta, std::uint64_t seed,
                                double inflation_cap = 1.6, const NibbleConfig& cfg = {});

struct RegularizeLog {
    int stage1_iterations = 0;
    long long design_edges_added = 0;
    long long patch_edges_added = 0;
    int design_degree_target = 0;
    int design_degree_used = 0;
    long long delta_before = 0, delta_after = 0;
    long long delta2_before = 0, delta2_after = 0;
    long long min_degree_after = 0; // over the kept set
    bool floor_ok = false;          // min degree >= (1-eps) Delta
    bool delta_cap_ok = false;      // Delta(H') <= (1+eps^{1/4}) Delta
    bool delta2_cap_ok = false;     // Delta_2(H') <= eps^{1/4} Delta + Delta_2
    std::vector<std::string> notes;
};

/// Degree regularisation ahead of the nibble: stage 1 overlays resolvable
/// designs on the deficient set while it is large, stage 2 patches each
/// remaining deficient vertex to degree exactly Delta with edges through a
/// family of disjoint (r-1)-sets. Deficiency is measured on `v_keep` (all
/// vertices when empty): those are the vertices the downstream matchings
/// must cover. Original edges keep their ids as a prefix of H'.
std::pair<MultiHypergraph, RegularizeLog> regularize(const MultiHypergraph& h, double eps,
                                                     const std::vector<int>& v_keep);

/// Edge-disjoint matchings of H (original edges only), each covering at
/// least (1-delta)|V| of the target set: regularize -> nibble_partition ->
/// strip added edges -> keep the matchings that reach the coverage bar.
MatchingFamily matching_family(const MultiHypergraph& h, const std::vector<int>& v_target,
                               double delta, std::uint64_t seed);

/// One random matching from matching_family's output, resampled up to
/// `attempts` times; throws CoverageNotReachedError when every attempt
/// produces an empty family.
std::vector<int> defect_matching(const MultiHypergraph& h, const std::vector<int>& v_target,
                                 double delta, std::uint64_t seed, int attempts = 5);

} // namespace rainbow
