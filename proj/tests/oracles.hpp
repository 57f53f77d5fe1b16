// Test-only brute-force oracles. Everything here is deliberately independent
// of the library's enumeration and counting paths: plain nested loops over
// tuples, permutations and adjacency bitmaps.
#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "rainbow/graph.hpp"
#include "rainbow/pattern.hpp"

namespace oracles {

// injective homomorphisms F -> G (ordered embeddings), rainbow and total
struct BruteCounts {
    long long embeddings = 0;
    long long rainbow_embeddings = 0;
};

inline BruteCounts brute_embeddings(const rainbow::EdgeColouredGraph& g,
                                    const rainbow::PatternGraph& f) {
    const int n = g.vertex_count();
    std::vector<int> image(f.f, -1);
    std::vector<char> used(n, 0);
    BruteCounts out;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == f.f) {
            std::vector<long long> colours;
            for (const auto& [a, b] : f.edges) {
                const int id = g.find_edge(image[a], image[b]);
                if (id < 0) return;
                colours.push_back(g.colour_of(id));
            }
            ++out.embeddings;
            std::sort(colours.begin(), colours.end());
            if (std::adjacent_find(colours.begin(), colours.end()) == colours.end())
                ++out.rainbow_embeddings;
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            image[depth] = v;
            self(self, depth + 1);
            used[v] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

inline long long brute_rainbow_copies(const rainbow::EdgeColouredGraph& g,
                                      const rainbow::PatternGraph& f) {
    return brute_embeddings(g, f).rainbow_embeddings / f.aut;
}

// codegree by adjacency bitmap, no sorted-merge involved
inline int brute_codegree(const rainbow::EdgeColouredGraph& g, int u, int v) {
    std::vector<char> nu(g.vertex_count(), 0);
    for (const auto& h : g.adjacency(u)) nu[h.to] = 1;
    int c = 0;
    for (const auto& h : g.adjacency(v)) c += nu[h.to];
    return c;
}

inline int brute_mono_codegree(const rainbow::EdgeColouredGraph& g, int u, int v) {
    int c = 0;
    for (int w = 0; w < g.vertex_count(); ++w) {
        if (w == u || w == v) continue;
        const int eu = g.find_edge(u, w), ev = g.find_edge(v, w);
        if (eu >= 0 && ev >= 0 && g.colour_of(eu) == g.colour_of(ev)) ++c;
    }
    return c;
}

// all full transversals of an n x n array, as sorted (row, col) cell sets;
// enumerates the n! column choices
inline std::set<std::vector<std::pair<int, int>>> all_full_transversals(
    const std::vector<std::vector<long long>>& a) {
    const int n = static_cast<int>(a.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::vector<std::pair<int, int>>> out;
    do {
        std::set<long long> syms;
        bool ok = true;
        for (int r = 0; r < n && ok; ++r) ok = syms.insert(a[r][perm[r]]).second;
        if (ok) {
            std::vector<std::pair<int, int>> cells;
            for (int r = 0; r < n; ++r) cells.emplace_back(r, perm[r]);
            out.insert(cells);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// does a partial transversal extend to (or already equal) a full one?
inline bool extends_to_full(const std::set<std::vector<std::pair<int, int>>>& full,
                            const std::vector<std::pair<int, int>>& cells) {
    for (const auto& t : full) {
        bool subset = true;
        for (const auto& cell : cells)
            if (std::find(t.begin(), t.end(), cell) == t.end()) {
                subset = false;
                break;
            }
        if (subset) return true;
    }
    return false;
}

// monochromatic complete graph
inline rainbow::EdgeColouredGraph mono_kn(int n) {
    std::vector<std::tuple<int, int, long long>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j, 0);
    return rainbow::EdgeColouredGraph::build(n, edges);
}

// complete bipartite with parts [0, a) and [a, a+b), all edges one colour
inline rainbow::EdgeColouredGraph mono_complete_bipartite(int a, int b) {
    std::vector<std::tuple<int, int, long long>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j, 0);
    return rainbow::EdgeColouredGraph::build(a + b, edges);
}

} // namespace oracles
