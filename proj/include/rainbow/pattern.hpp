#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rainbow/graph.hpp"

namespace rainbow {

/// A small fixed pattern graph F, together with the quantities the counting
/// lemmas need: |Aut(F)|, |Aut_X(F)| for an optional vertex partition X into
/// independent sets, and a(F).
struct PatternGraph {
    int f = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> parts;  // optional partition X; empty = none

    long long aut = 0;          // |Aut(F)|; 0 when not computed (f > 10)
    long long aut_partite = 0;  // |Aut_X(F)|; 0 when no parts given
    int a_value = 0;

    int h() const { return static_cast<int>(edges.size()); }
    bool has_edge(int a, int b) const;

    static PatternGraph from_edges(int f, std::vector<std::pair<int, int>> edges,
                                   std::vector<std::vector<int>> parts = {});
    static PatternGraph cycle(int s);
    /// Named presets: k2, k3, c4, c5, path2, 2k2.
    static PatternGraph preset(const std::string& name);
};

/// |Aut(F)| by backtracking; f <= 10.
long long count_automorphisms(const PatternGraph& fpat);
/// |Aut_X(F)|: automorphisms mapping the part system onto itself.
long long count_automorphisms_partite(const PatternGraph& fpat);

/// a(F) = max{Delta(F), a'(F), a''(F)}.
int pattern_a_value(const PatternGraph& fpat);

struct Anchor {
    enum class Kind { none, vertex, edge } kind = Kind::none;
    int u = -1;
    int v = -1;
    static Anchor none() { return {}; }
    static Anchor at_vertex(int u) { return {Kind::vertex, u, -1}; }
    static Anchor at_edge(int u, int v) { return {Kind::edge, u, v}; }
};

/// Partite counting mode: F's parts must be set; target sets are disjoint
/// subsets of V(G). A copy is counted when some injective part-to-part map
/// sends each X_i inside one target set.
struct PartiteSpec {
    std::vector<std::vector<int>> target_sets;
};

struct CountResult {
    long long rainbow = 0;
    long long nonrainbow = 0; // copies with at least two equal-coloured edges
    long long total = 0;
};

CountResult count_pattern(const EdgeColouredGraph& g, const PatternGraph& fpat,
                          Anchor anchor = Anchor::none(), const PartiteSpec* partite = nullptr);

long long count_rainbow(const EdgeColouredGraph& g, const PatternGraph& fpat,
                        Anchor anchor = Anchor::none(), const PartiteSpec* partite = nullptr);
long long count_nonrainbow(const EdgeColouredGraph& g, const PatternGraph& fpat,
                           Anchor anchor = Anchor::none());

/// Rainbow copy counts containing v, for every v, from a single enumeration.
std::vector<long long> count_rainbow_per_vertex(const EdgeColouredGraph& g,
                                                const PatternGraph& fpat);
/// Rainbow copy counts containing each edge (indexed by edge id).
std::vector<long long> count_rainbow_per_edge(const EdgeColouredGraph& g,
                                              const PatternGraph& fpat);

/// Closed-form predictions from the counting lemmas. In partite mode
/// (partite_r > 0) `n` is the size of one target part and F must carry a
/// partition into partite_r equal parts.
double estimate_rainbow(long long n, double d, const PatternGraph& fpat,
                        Anchor::Kind anchor, int partite_r = 0);

/// All rainbow copies of F, as sorted edge-id lists (the family the
/// decomposition pipelines consume). Guarded by the same cost rules as
/// count_pattern.
std::vector<std::vector<int>> enumerate_rainbow_copies(const EdgeColouredGraph& g,
                                                       const PatternGraph& fpat,
                                                       long long limit = -1);

} // namespace rainbow
