#include "rainbow/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "rainbow/errors.hpp"

namespace rainbow {

bool PatternGraph::has_edge(int a, int b) const {
    for (const auto& [x, y] : edges)
        if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
}

namespace {

std::vector<int> pattern_degrees(const PatternGraph& fpat) {
    std::vector<int> deg(fpat.f, 0);
    for (const auto& [a, b] : fpat.edges) {
        ++deg[a];
        ++deg[b];
    }
    return deg;
}

std::vector<std::vector<char>> pattern_adjacency(const PatternGraph& fpat) {
    std::vector<std::vector<char>> adj(fpat.f, std::vector<char>(fpat.f, 0));
    for (const auto& [a, b] : fpat.edges) adj[a][b] = adj[b][a] = 1;
    return adj;
}

// Backtracking over degree-compatible assignments. `partite` additionally
// requires the permutation to map the part system onto itself.
long long automorphism_backtrack(const PatternGraph& fpat, bool partite) {
    const int f = fpat.f;
    const auto adj = pattern_adjacency(fpat);
    const auto deg = pattern_degrees(fpat);
    std::vector<int> part_of(f, -1);
    for (std::size_t p = 0; p < fpat.parts.size(); ++p)
        for (int v : fpat.parts[p]) part_of[v] = static_cast<int>(p);

    std::vector<int> perm(f, -1);
    std::vector<char> used(f, 0);
    long long count = 0;

    auto leaf_part_ok = [&]() {
        // image of each part must be exactly one part
        std::vector<int> image_part(fpat.parts.size(), -1);
        for (int v = 0; v < f; ++v) {
            const int p = part_of[v], q = part_of[perm[v]];
            if (image_part[p] == -1)
                image_part[p] = q;
            else if (image_part[p] != q)
                return false;
        }
        std::vector<char> hit(fpat.parts.size(), 0);
        for (std::size_t p = 0; p < fpat.parts.size(); ++p) {
            if (fpat.parts[p].size() != fpat.parts[image_part[p]].size()) return false;
            if (hit[image_part[p]]++) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, int i) -> void {
        if (i == f) {
            if (!partite || leaf_part_ok()) ++count;
            return;
        }
        for (int j = 0; j < f; ++j) {
            if (used[j] || deg[j] != deg[i]) continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k)
                if (adj[i][k] != adj[j][perm[k]]) ok = false;
            if (!ok) continue;
            used[j] = 1;
            perm[i] = j;
            self(self, i + 1);
            used[j] = 0;
        }
    };
    rec(rec, 0);
    return count;
}

} // namespace

long long count_automorphisms(const PatternGraph& fpat) {
    if (fpat.f > 10) throw PatternTooLargeError("automorphism enumeration capped at 10 vertices");
    return automorphism_backtrack(fpat, false);
}

long long count_automorphisms_partite(const PatternGraph& fpat) {
    if (fpat.f > 10) throw PatternTooLargeError("automorphism enumeration capped at 10 vertices");
    if (fpat.parts.empty()) return count_automorphisms(fpat);
    return automorphism_backtrack(fpat, true);
}

int pattern_a_value(const PatternGraph& fpat) {
    if (fpat.edges.empty()) throw NoEdgesError("a(F) needs at least one edge");
    const auto deg = pattern_degrees(fpat);
    int a = *std::max_element(deg.begin(), deg.end()); // Delta(F)
    for (const auto& [u, v] : fpat.edges) a = std::max(a, deg[u] + deg[v] - 2);
    const auto adj = pattern_adjacency(fpat);
    for (int v = 0; v < fpat.f; ++v)
        for (int u = 0; u < fpat.f; ++u)
            for (int w = u + 1; w < fpat.f; ++w)
                if (u != v && w != v && adj[u][v] && adj[v][w])
                    a = std::max(a, deg[u] + deg[v] + deg[w] - 4);
    return a;
}

PatternGraph PatternGraph::from_edges(int f, std::vector<std::pair<int, int>> edges,
                                      std::vector<std::vector<int>> parts) {
    PatternGraph fpat;
    fpat.f = f;
    for (auto& [a, b] : edges) {
        if (a < 0 || a >= f || b < 0 || b >= f)
            throw VertexOutOfRangeError("pattern edge endpoint outside [0,f)");
        if (a == b) throw SelfLoopError("pattern self-loop");
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw DuplicateEdgeError("duplicate pattern edge");
    fpat.edges = std::move(edges);

    if (!parts.empty()) {
        std::vector<char> seen(f, 0);
        for (const auto& part : parts)
            for (int v : part) {
                if (v < 0 || v >= f || seen[v]++)
                    throw VertexOutOfRangeError("parts must partition V(F)");
            }
        for (int v = 0; v < f; ++v)
            if (!seen[v]) throw VertexOutOfRangeError("parts must cover V(F)");
        for (const auto& part : parts)
            for (std::size_t i = 0; i < part.size(); ++i)
                for (std::size_t j = i + 1; j < part.size(); ++j)
                    if (fpat.has_edge(part[i], part[j]))
                        throw DuplicateEdgeError("part is not independent in F");
        fpat.parts = std::move(parts);
    }

    if (f <= 10) {
        fpat.aut = automorphism_backtrack(fpat, false);
        if (!fpat.parts.empty()) fpat.aut_partite = automorphism_backtrack(fpat, true);
    }
    if (!fpat.edges.empty()) fpat.a_value = pattern_a_value(fpat);
    return fpat;
}

PatternGraph PatternGraph::cycle(int s) {
    if (s < 3) throw VertexOutOfRangeError("cycle needs length >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < s; ++i) edges.emplace_back(i, (i + 1) % s);
    PatternGraph fpat;
    if (s <= 10) {
        fpat = from_edges(s, std::move(edges));
    } else {
        fpat.f = s;
        for (auto& [a, b] : edges)
            if (a > b) std::swap(a, b);
        std::sort(edges.begin(), edges.end());
        fpat.edges = std::move(edges);
        fpat.aut = 2LL * s; // dihedral group
        fpat.a_value = 2;
    }
    return fpat;
}

PatternGraph PatternGraph::preset(const std::string& name) {
    if (name == "k2") return from_edges(2, {{0, 1}});
    if (name == "k3") return from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    if (name == "c4") return cycle(4);
    if (name == "c5") return cycle(5);
    if (name == "path2") return from_edges(3, {{0, 1}, {1, 2}});
    if (name == "2k2") return from_edges(4, {{0, 1}, {2, 3}});
    throw ParseError("unknown pattern preset '" + name + "'");
}

namespace {

// Enumeration state shared across the recursion. The pattern vertices are
// visited in a connected greedy order maximising back-edges, so every
// extension beyond the first vertex is a neighbourhood intersection.
struct Embedder {
    const EdgeColouredGraph& g;
    const PatternGraph& fpat;
    std::vector<int> order;                 // position -> F-vertex
    std::vector<std::vector<int>> back;     // position -> earlier positions adjacent in F
    std::vector<int> pin;                   // F-vertex -> pinned G-vertex or -1
    std::vector<int> image;                 // position -> G-vertex
    std::vector<int> edge_stack;            // G-edge ids used so far
    std::vector<char> used;                 // G-vertex usage
    std::vector<std::uint8_t> colour_count; // per dense colour
    int dup_colours = 0;

    // partite mode
    const PartiteSpec* partite = nullptr;
    std::vector<int> target_of;   // G-vertex -> target set index or -1
    std::vector<int> fpart_of;    // F-vertex -> part index
    std::vector<int> commit;      // F-part -> target index or -1
    std::vector<int> taken_by;    // target index -> F-part or -1
    std::vector<int> placed;      // per F-part: vertices placed

    long long emb_rainbow = 0;
    long long emb_nonrainbow = 0;

    // optional accumulators
    std::vector<long long>* per_vertex = nullptr;
    std::vector<long long>* per_edge = nullptr;
    std::vector<std::vector<int>>* copies_out = nullptr;
    std::unordered_set<std::string>* copy_keys = nullptr;
    long long copy_limit = -1;
    bool stop = false;

    Embedder(const EdgeColouredGraph& g_, const PatternGraph& f_) : g(g_), fpat(f_) {
        pin.assign(fpat.f, -1);
        used.assign(g.vertex_count(), 0);
        colour_count.assign(g.colour_count(), 0);
        image.assign(fpat.f, -1);
    }

    void build_order() {
        const auto adj = pattern_adjacency(fpat);
        const auto deg = pattern_degrees(fpat);
        std::vector<char> placed_f(fpat.f, 0);
        order.clear();
        std::vector<int> back_count(fpat.f, 0);
        for (int step = 0; step < fpat.f; ++step) {
            int best = -1;
            for (int v = 0; v < fpat.f; ++v) {
                if (placed_f[v]) continue;
                if (best == -1) {
                    best = v;
                    continue;
                }
                auto key = [&](int x) {
                    return std::tuple(pin[x] >= 0 ? 1 : 0, back_count[x], deg[x], -x);
                };
                if (key(v) > key(best)) best = v;
            }
            placed_f[best] = 1;
            order.push_back(best);
            for (int v = 0; v < fpat.f; ++v)
                if (adj[best][v]) ++back_count[v];
        }
        back.assign(fpat.f, {});
        std::vector<int> pos(fpat.f);
        for (int i = 0; i < fpat.f; ++i) pos[order[i]] = i;
        for (const auto& [a, b] : fpat.edges) {
            const int pa = pos[a], pb = pos[b];
            back[std::max(pa, pb)].push_back(std::min(pa, pb));
        }
    }

    void setup_partite(const PartiteSpec* spec) {
        partite = spec;
        if (!spec) return;
        if (fpat.parts.empty())
            throw BadDistributionError("partite counting needs F's vertex partition");
        target_of.assign(g.vertex_count(), -1);
        for (std::size_t t = 0; t < spec->target_sets.size(); ++t)
            for (int v : spec->target_sets[t]) {
                if (target_of[v] != -1)
                    throw PartsOverlapError("partite target sets must be disjoint");
                target_of[v] = static_cast<int>(t);
            }
        fpart_of.assign(fpat.f, -1);
        for (std::size_t p = 0; p < fpat.parts.size(); ++p)
            for (int v : fpat.parts[p]) fpart_of[v] = static_cast<int>(p);
        commit.assign(fpat.parts.size(), -1);
        taken_by.assign(spec->target_sets.size(), -1);
        placed.assign(fpat.parts.size(), 0);
    }

    bool partite_place(int fv, int gv) {
        if (!partite) return true;
        const int t = target_of[gv];
        if (t < 0) return false;
        const int p = fpart_of[fv];
        if (commit[p] == -1) {
            if (taken_by[t] != -1) return false; // injectivity of the part map
            commit[p] = t;
            taken_by[t] = p;
        } else if (commit[p] != t) {
            return false;
        }
        ++placed[p];
        return true;
    }

    void partite_unplace(int fv, int gv) {
        if (!partite) return;
        const int p = fpart_of[fv];
        if (--placed[p] == 0) {
            taken_by[commit[p]] = -1;
            commit[p] = -1;
        }
        (void)gv;
    }

    void add_colour(int c) {
        if (++colour_count[c] >= 2) ++dup_colours;
    }
    void remove_colour(int c) {
        if (colour_count[c]-- >= 2) --dup_colours;
    }

    void at_leaf() {
        const bool rainbow = dup_colours == 0;
        if (rainbow)
            ++emb_rainbow;
        else
            ++emb_nonrainbow;
        if (rainbow && per_vertex)
            for (int gv : image) ++(*per_vertex)[gv];
        if (rainbow && per_edge)
            for (int id : edge_stack) ++(*per_edge)[id];
        if (rainbow && copies_out) {
            std::vector<int> ids = edge_stack;
            std::sort(ids.begin(), ids.end());
            std::string key(reinterpret_cast<const char*>(ids.data()),
                            ids.size() * sizeof(int));
            if (copy_keys->insert(std::move(key)).second) {
                copies_out->push_back(std::move(ids));
                if (copy_limit >= 0 &&
                    static_cast<long long>(copies_out->size()) >= copy_limit)
                    stop = true;
            }
        }
    }

    void extend(int depth) {
        if (stop) return;
        if (depth == fpat.f) {
            at_leaf();
            return;
        }
        const int fv = order[depth];
        auto try_vertex = [&](int gv) {
            if (stop || used[gv]) return;
            // all back-edges must exist; collect their ids
            int ids[16];
            const auto& bk = back[depth];
            for (std::size_t i = 0; i < bk.size(); ++i) {
                const int id = g.find_edge(image[bk[i]], gv);
                if (id < 0) return;
                ids[i] = id;
            }
            if (!partite_place(fv, gv)) return;
            used[gv] = 1;
            image[depth] = gv;
            for (std::size_t i = 0; i < bk.size(); ++i) {
                edge_stack.push_back(ids[i]);
                add_colour(g.colour_of(ids[i]));
            }
            extend(depth + 1);
            for (std::size_t i = bk.size(); i-- > 0;) {
                remove_colour(g.colour_of(edge_stack.back()));
                edge_stack.pop_back();
            }
            image[depth] = -1;
            used[gv] = 0;
            partite_unplace(fv, gv);
        };

        if (pin[fv] >= 0) {
            try_vertex(pin[fv]);
        } else if (!back[depth].empty()) {
            // iterate over the smallest back-neighbourhood
            int base = back[depth][0];
            for (int b : back[depth])
                if (g.degree(image[b]) < g.degree(image[base])) base = b;
            for (const auto& h : g.adjacency(image[base])) try_vertex(h.to);
        } else {
            for (int gv = 0; gv < g.vertex_count(); ++gv) try_vertex(gv);
        }
    }

    void run() {
        build_order();
        for (const auto& bk : back)
            if (bk.size() > 16)
                throw PatternTooLargeError("pattern back-degree exceeds enumeration buffer");
        extend(0);
    }
};

void check_cost_guard(const EdgeColouredGraph& g, const PatternGraph& fpat, Anchor anchor) {
    if (anchor.kind == Anchor::Kind::none && fpat.f > 8 && g.vertex_count() > 500)
        throw CostGuardExceededError("unanchored counting limited to f <= 8 for n > 500");
}

long long pattern_aut(const PatternGraph& fpat, const PartiteSpec* partite) {
    const long long a = partite ? fpat.aut_partite : fpat.aut;
    if (a <= 0) throw PatternTooLargeError("pattern has no automorphism count available");
    return a;
}

} // namespace

CountResult count_pattern(const EdgeColouredGraph& g, const PatternGraph& fpat, Anchor anchor,
                          const PartiteSpec* partite) {
    check_cost_guard(g, fpat, anchor);
    const long long aut = pattern_aut(fpat, partite);

    long long emb_rainbow = 0, emb_nonrainbow = 0;
    auto run_with_pins = [&](const std::vector<std::pair<int, int>>& pins) {
        Embedder e(g, fpat);
        e.setup_partite(partite);
        for (const auto& [fv, gv] : pins) e.pin[fv] = gv;
        e.run();
        emb_rainbow += e.emb_rainbow;
        emb_nonrainbow += e.emb_nonrainbow;
    };

    switch (anchor.kind) {
        case Anchor::Kind::none:
            run_with_pins({});
            break;
        case Anchor::Kind::vertex: {
            if (anchor.u < 0 || anchor.u >= g.vertex_count())
                throw AnchorNotInGraphError("anchor vertex outside graph");
            // each embedding maps exactly one F-vertex onto the anchor
            for (int fv = 0; fv < fpat.f; ++fv) run_with_pins({{fv, anchor.u}});
            break;
        }
        case Anchor::Kind::edge: {
            if (g.find_edge(anchor.u, anchor.v) < 0)
                throw AnchorNotInGraphError("anchor edge not in graph");
            for (const auto& [a, b] : fpat.edges) {
                run_with_pins({{a, anchor.u}, {b, anchor.v}});
                run_with_pins({{a, anchor.v}, {b, anchor.u}});
            }
            break;
        }
    }

    CountResult out;
    out.rainbow = emb_rainbow / aut;
    out.nonrainbow = emb_nonrainbow / aut;
    out.total = out.rainbow + out.nonrainbow;
    return out;
}

long long count_rainbow(const EdgeColouredGraph& g, const PatternGraph& fpat, Anchor anchor,
                        const PartiteSpec* partite) {
    return count_pattern(g, fpat, anchor, partite).rainbow;
}

long long count_nonrainbow(const EdgeColouredGraph& g, const PatternGraph& fpat, Anchor anchor) {
    return count_pattern(g, fpat, anchor).nonrainbow;
}

std::vector<long long> count_rainbow_per_vertex(const EdgeColouredGraph& g,
                                                const PatternGraph& fpat) {
    check_cost_guard(g, fpat, Anchor::none());
    const long long aut = pattern_aut(fpat, nullptr);
    std::vector<long long> acc(g.vertex_count(), 0);
    Embedder e(g, fpat);
    e.per_vertex = &acc;
    e.run();
    for (auto& x : acc) x /= aut;
    return acc;
}

std::vector<long long> count_rainbow_per_edge(const EdgeColouredGraph& g,
                                              const PatternGraph& fpat) {
    check_cost_guard(g, fpat, Anchor::none());
    const long long aut = pattern_aut(fpat, nullptr);
    std::vector<long long> acc(g.edge_count(), 0);
    Embedder e(g, fpat);
    e.per_edge = &acc;
    e.run();
    for (auto& x : acc) x /= aut;
    return acc;
}

std::vector<std::vector<int>> enumerate_rainbow_copies(const EdgeColouredGraph& g,
                                                       const PatternGraph& fpat,
                                                       long long limit) {
    check_cost_guard(g, fpat, Anchor::none());
    std::vector<std::vector<int>> copies;
    std::unordered_set<std::string> keys;
    Embedder e(g, fpat);
    e.copies_out = &copies;
    e.copy_keys = &keys;
    e.copy_limit = limit;
    e.run();
    return copies;
}

double estimate_rainbow(long long n, double d, const PatternGraph& fpat, Anchor::Kind anchor,
                        int partite_r) {
    if (!(d > 0.0 && d <= 1.0)) throw BadDistributionError("density d must lie in (0,1]");
    const int h = fpat.h();
    const double nn = static_cast<double>(n);
    if (partite_r <= 0) {
        const double aut = static_cast<double>(pattern_aut(fpat, nullptr));
        switch (anchor) {
            case Anchor::Kind::none:
                return std::pow(d, h) * std::pow(nn, fpat.f) / aut;
            case Anchor::Kind::vertex:
                return fpat.f * std::pow(d, h) * std::pow(nn, fpat.f - 1) / aut;
            case Anchor::Kind::edge:
                return 2.0 * h * std::pow(d, h - 1) * std::pow(nn, fpat.f - 2) / aut;
        }
    }
    const int r = partite_r;
    if (static_cast<int>(fpat.parts.size()) != r)
        throw InfeasibleParamsError("partite estimate needs F partitioned into r parts");
    for (const auto& part : fpat.parts)
        if (static_cast<int>(part.size()) * r != fpat.f)
            throw InfeasibleParamsError("partite estimate needs equal part sizes");
    const int s = fpat.f / r; // vertices of F per part
    PartiteSpec dummy;
    const double aut = static_cast<double>(pattern_aut(fpat, &dummy));
    double rfact = 1;
    for (int i = 2; i <= r; ++i) rfact *= i;
    switch (anchor) {
        case Anchor::Kind::none:
            return rfact * std::pow(d, h) * std::pow(nn, fpat.f) / aut;
        case Anchor::Kind::vertex:
            return rfact * s * std::pow(d, h) * std::pow(nn, fpat.f - 1) / aut;
        case Anchor::Kind::edge:
            return rfact * h * std::pow(d, h - 1) * std::pow(nn, fpat.f - 2) /
                   (r * (r - 1) / 2.0 * aut);
    }
    return 0; // unreachable
}

} // namespace rainbow
