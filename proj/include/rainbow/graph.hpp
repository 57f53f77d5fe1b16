#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace rainbow {

/// An undirected simple graph with one colour per edge.
///
/// Colours are stored as dense ids 0..m-1; arbitrary integer labels given at
/// construction are remapped and the mapping kept for round-trip output.
/// The structure is immutable after build(), so concurrent readers are safe.
class EdgeColouredGraph {
public:
    struct Half {       // one directed half of an edge, kept in adjacency lists
        int to;
        int edge;       // index into edges()/colour_of()
    };

    static EdgeColouredGraph build(int n,
                                   const std::vector<std::tuple<int, int, long long>>& coloured_edges);

    int vertex_count() const { return n_; }
    int colour_count() const { return m_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    int colour_of(int edge_id) const { return colour_[edge_id]; }
    long long colour_label(int colour_id) const { return colour_label_[colour_id]; }

    /// Edge ids of one colour class.
    const std::vector<int>& colour_class(int colour_id) const { return class_index_[colour_id]; }

    /// Neighbours of v, sorted by vertex id.
    const std::vector<Half>& adjacency(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    /// Edge id of {u, v}, or -1 when absent.
    int find_edge(int u, int v) const;
    bool has_edge(int u, int v) const { return find_edge(u, v) >= 0; }

    /// |N(u) ∩ N(v)|.
    int codegree(int u, int v) const;
    std::vector<int> common_neighbours(int u, int v) const;

    double density() const; // e(G) / C(n,2)

    /// Rewrites dense colour ids to match another graph's id space; only for
    /// constructing subgraphs that must stay comparable with their parent.
    void remap_colours(const EdgeColouredGraph& universe);

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::pair<int, int>> edges_; // normalised u < v
    std::vector<int> colour_;                // edge id -> dense colour id
    std::vector<long long> colour_label_;    // dense colour id -> original label
    std::vector<std::vector<int>> class_index_;
    std::vector<std::vector<Half>> adj_;
};

struct BoundednessReport {
    int g = 0;                 // max colour class size
    int ell = 0;               // max per-vertex colour multiplicity
    int worst_colour = -1;     // attains g
    int worst_vertex = -1;     // attains ell together with worst_vertex_colour
    int worst_vertex_colour = -1;
};

/// g- and locally-ell-boundedness of the colouring, with witnesses.
BoundednessReport boundedness(const EdgeColouredGraph& g);

/// Subgraph spanned by the edges whose colour lies in `colours` (dense ids).
/// The colour universe (m and labels) is preserved.
EdgeColouredGraph colour_subgraph(const EdgeColouredGraph& g, const std::vector<int>& colours);

/// Monochromatic codegree: common neighbours w of u,v with colour(uw) == colour(vw).
struct MonoCodegree {
    int count = 0;
    std::vector<int> witnesses;
};
MonoCodegree mono_codegree(const EdgeColouredGraph& g, int u, int v);

// Text format: first line "n m", then one "u v c" line per edge, where c is
// the original colour label. Trailing junk on a line is rejected.
EdgeColouredGraph read_graph(std::istream& in);
EdgeColouredGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const EdgeColouredGraph& g);
void write_graph_file(const std::string& path, const EdgeColouredGraph& g);

} // namespace rainbow
