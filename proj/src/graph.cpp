#include "rainbow/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "rainbow/errors.hpp"

namespace rainbow {

EdgeColouredGraph EdgeColouredGraph::build(
    int n, const std::vector<std::tuple<int, int, long long>>& coloured_edges) {
    EdgeColouredGraph g;
    g.n_ = n;
    g.adj_.resize(n);
    g.edges_.reserve(coloured_edges.size());
    g.colour_.reserve(coloured_edges.size());

    std::unordered_map<long long, int> label_to_id;
    std::unordered_map<std::uint64_t, int> seen; // packed pair -> edge id

    for (const auto& [eu, ev, label] : coloured_edges) {
        int u = eu, v = ev;
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw VertexOutOfRangeError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") outside vertex range [0," + std::to_string(n) + ")");
        if (u == v)
            throw SelfLoopError("self-loop at vertex " + std::to_string(u));
        if (label < 0)
            throw ParseError("negative colour label " + std::to_string(label));
        if (u > v) std::swap(u, v);
        const std::uint64_t key =
            (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
        if (!seen.emplace(key, static_cast<int>(g.edges_.size())).second)
            throw DuplicateEdgeError("duplicate edge (" + std::to_string(u) + "," +
                                     std::to_string(v) + ")");

        auto [it, fresh] = label_to_id.emplace(label, static_cast<int>(g.colour_label_.size()));
        if (fresh) g.colour_label_.push_back(label);

        const int id = static_cast<int>(g.edges_.size());
        g.edges_.emplace_back(u, v);
        g.colour_.push_back(it->second);
        g.adj_[u].push_back({v, id});
        g.adj_[v].push_back({u, id});
    }

    g.m_ = static_cast<int>(g.colour_label_.size());
    g.class_index_.resize(g.m_);
    for (int id = 0; id < static_cast<int>(g.edges_.size()); ++id)
        g.class_index_[g.colour_[id]].push_back(id);
    for (auto& lst : g.adj_)
        std::sort(lst.begin(), lst.end(), [](const Half& a, const Half& b) { return a.to < b.to; });
    return g;
}

int EdgeColouredGraph::find_edge(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v) return -1;
    const auto& lst = adj_[u];
    auto it = std::lower_bound(lst.begin(), lst.end(), v,
                               [](const Half& h, int x) { return h.to < x; });
    if (it != lst.end() && it->to == v) return it->edge;
    return -1;
}

int EdgeColouredGraph::codegree(int u, int v) const {
    const auto &a = adj_[u], &b = adj_[v];
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].to < b[j].to)
            ++i;
        else if (a[i].to > b[j].to)
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

std::vector<int> EdgeColouredGraph::common_neighbours(int u, int v) const {
    const auto &a = adj_[u], &b = adj_[v];
    std::vector<int> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].to < b[j].to)
            ++i;
        else if (a[i].to > b[j].to)
            ++j;
        else {
            out.push_back(a[i].to);
            ++i;
            ++j;
        }
    }
    return out;
}

double EdgeColouredGraph::density() const {
    if (n_ < 2) return 0.0;
    return static_cast<double>(edges_.size()) /
           (static_cast<double>(n_) * (n_ - 1) / 2.0);
}

BoundednessReport boundedness(const EdgeColouredGraph& g) {
    if (g.edge_count() == 0) throw EmptyGraphError("boundedness of an edgeless graph");
    BoundednessReport rep;
    for (int c = 0; c < g.colour_count(); ++c) {
        const int size = static_cast<int>(g.colour_class(c).size());
        if (size > rep.g) {
            rep.g = size;
            rep.worst_colour = c;
        }
    }
    // Δ(G(φ,c)) over all c: count per-vertex colour multiplicities.
    std::vector<int> mult(g.colour_count(), 0);
    for (int v = 0; v < g.vertex_count(); ++v) {
        for (const auto& h : g.adjacency(v)) {
            const int c = g.colour_of(h.edge);
            if (++mult[c] > rep.ell) {
                rep.ell = mult[c];
                rep.worst_vertex = v;
                rep.worst_vertex_colour = c;
            }
        }
        for (const auto& h : g.adjacency(v)) mult[g.colour_of(h.edge)] = 0;
    }
    return rep;
}

EdgeColouredGraph colour_subgraph(const EdgeColouredGraph& g, const std::vector<int>& colours) {
    std::vector<char> keep(g.colour_count(), 0);
    for (int c : colours) {
        if (c < 0 || c >= g.colour_count())
            throw VertexOutOfRangeError("colour id " + std::to_string(c) + " outside [0,m)");
        keep[c] = 1;
    }
    std::vector<std::tuple<int, int, long long>> kept;
    for (long long id = 0; id < g.edge_count(); ++id) {
        const int c = g.colour_of(static_cast<int>(id));
        if (keep[c])
            kept.emplace_back(g.edges()[id].first, g.edges()[id].second, g.colour_label(c));
    }
    // Rebuild, then restore the full colour universe so ids stay comparable.
    EdgeColouredGraph sub = EdgeColouredGraph::build(g.vertex_count(), kept);
    sub.remap_colours(g);
    return sub;
}

void EdgeColouredGraph::remap_colours(const EdgeColouredGraph& universe) {
    // Rewrite dense colour ids so they agree with `universe`'s id space.
    std::unordered_map<long long, int> to_universe;
    for (int c = 0; c < universe.colour_count(); ++c)
        to_universe[universe.colour_label(c)] = c;
    std::vector<int> new_colour(colour_.size());
    for (std::size_t id = 0; id < colour_.size(); ++id)
        new_colour[id] = to_universe.at(colour_label_[colour_[id]]);
    colour_ = std::move(new_colour);
    colour_label_.assign(universe.colour_label_.begin(), universe.colour_label_.end());
    m_ = universe.m_;
    class_index_.assign(m_, {});
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id)
        class_index_[colour_[id]].push_back(id);
}

MonoCodegree mono_codegree(const EdgeColouredGraph& g, int u, int v) {
    if (u == v) throw VertexOutOfRangeError("mono_codegree needs two distinct vertices");
    MonoCodegree out;
    const auto &a = g.adjacency(u), &b = g.adjacency(v);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].to < b[j].to)
            ++i;
        else if (a[i].to > b[j].to)
            ++j;
        else {
            if (g.colour_of(a[i].edge) == g.colour_of(b[j].edge))
                out.witnesses.push_back(a[i].to);
            ++i;
            ++j;
        }
    }
    out.count = static_cast<int>(out.witnesses.size());
    return out;
}

EdgeColouredGraph read_graph(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty graph file");
    std::istringstream head(line);
    long long n = 0, m = 0;
    std::string junk;
    if (!(head >> n >> m) || (head >> junk))
        throw ParseError("header must be exactly 'n m'");
    if (n < 0 || m < 0) throw ParseError("negative counts in header");

    std::vector<std::tuple<int, int, long long>> edges;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long u, v, c;
        if (!(ls >> u >> v >> c) || (ls >> junk))
            throw ParseError("edge line must be exactly 'u v c': " + line);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v), c);
    }
    EdgeColouredGraph g = EdgeColouredGraph::build(static_cast<int>(n), edges);
    if (g.colour_count() > m)
        throw ParseError("header claims " + std::to_string(m) + " colours but " +
                         std::to_string(g.colour_count()) + " appear");
    return g;
}

EdgeColouredGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const EdgeColouredGraph& g) {
    out << g.vertex_count() << ' ' << g.colour_count() << '\n';
    for (long long id = 0; id < g.edge_count(); ++id) {
        const auto& [u, v] = g.edges()[id];
        out << u << ' ' << v << ' ' << g.colour_label(g.colour_of(static_cast<int>(id))) << '\n';
    }
}

void write_graph_file(const std::string& path, const EdgeColouredGraph& g) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_graph(out, g);
}

} // namespace rainbow
