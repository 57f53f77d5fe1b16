#include "rainbow/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

std::vector<long long> Partition::sizes() const {
    std::vector<long long> s(probs.size(), 0);
    for (int p : part_of)
        if (p >= 0) ++s[p];
    return s;
}

std::vector<std::vector<int>> Partition::groups() const {
    std::vector<std::vector<int>> g(probs.size());
    for (int e = 0; e < universe; ++e)
        if (part_of[e] >= 0) g[part_of[e]].push_back(e);
    return g;
}

Partition random_partition(int universe, const std::vector<double>& probs, std::uint64_t seed) {
    if (probs.empty()) throw BadDistributionError("empty probability vector");
    double sum = 0;
    for (double p : probs) {
        if (p < 0) throw BadDistributionError("negative probability");
        sum += p;
    }
    if (sum > 1.0 + 1e-12)
        throw BadDistributionError("probabilities sum to " + std::to_string(sum) + " > 1");

    Partition out;
    out.universe = universe;
    out.probs = probs;
    out.seed = seed;
    out.part_of.assign(universe, -1);
    Rng rng(derive_seed(seed, "random_partition"));
    for (int e = 0; e < universe; ++e) {
        const double u = rng.uniform();
        double acc = 0;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) {
                out.part_of[e] = static_cast<int>(i);
                break;
            }
        }
    }
    return out;
}

void write_partition(std::ostream& out, const Partition& p) {
    out << "probs";
    for (double q : p.probs) out << ' ' << q;
    out << "\nseed " << p.seed << '\n';
    for (int e = 0; e < p.universe; ++e) out << e << ' ' << p.part_of[e] << '\n';
}

Partition read_partition(std::istream& in) {
    Partition p;
    std::string line, word;
    if (!std::getline(in, line)) throw ParseError("missing partition header");
    {
        std::istringstream ls(line);
        ls >> word;
        if (word != "probs") throw ParseError("partition header must start with 'probs'");
        double q;
        while (ls >> q) p.probs.push_back(q);
    }
    if (!std::getline(in, line)) throw ParseError("missing seed line");
    {
        std::istringstream ls(line);
        ls >> word >> p.seed;
        if (word != "seed") throw ParseError("second partition line must be 'seed S'");
    }
    std::vector<std::pair<int, int>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int e, part;
        std::string junk;
        if (!(ls >> e >> part) || (ls >> junk)) throw ParseError("bad partition row: " + line);
        rows.emplace_back(e, part);
    }
    p.universe = static_cast<int>(rows.size());
    p.part_of.assign(p.universe, -1);
    for (const auto& [e, part] : rows) {
        if (e < 0 || e >= p.universe) throw ParseError("partition row element out of range");
        if (part >= static_cast<int>(p.probs.size())) throw ParseError("part index out of range");
        p.part_of[e] = part;
    }
    return p;
}

namespace {

// Single pass over the edges of g classifying each edge's common
// neighbourhood by part: returns for each part |N(u,v) cap V_i| and the
// monochromatic portion, as needed by condition (A3).
struct EdgeNeighbourhoodScan {
    std::vector<long long> codeg_by_part;
    std::vector<long long> mono_by_part;
};

EdgeNeighbourhoodScan scan_edge(const EdgeColouredGraph& g, int u, int v,
                                const std::vector<int>& part_of, int parts) {
    EdgeNeighbourhoodScan s;
    s.codeg_by_part.assign(parts, 0);
    s.mono_by_part.assign(parts, 0);
    const auto &a = g.adjacency(u), &b = g.adjacency(v);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].to < b[j].to)
            ++i;
        else if (a[i].to > b[j].to)
            ++j;
        else {
            const int w = a[i].to;
            const int part = part_of[w];
            if (part >= 0) {
                ++s.codeg_by_part[part];
                if (g.colour_of(a[i].edge) == g.colour_of(b[j].edge)) ++s.mono_by_part[part];
            }
            ++i;
            ++j;
        }
    }
    return s;
}

} // namespace

QrToSrResult qr_to_sr(const EdgeColouredGraph& g, const std::vector<double>& probs, double zeta,
                      double d, int max_retries, std::uint64_t seed) {
    const int n = g.vertex_count();
    const double p_floor = 1.0 / std::sqrt(static_cast<double>(n));
    for (double p : probs)
        if (p < p_floor)
            throw BadDistributionError("qr_to_sr requires p_i >= n^{-1/2} = " +
                                       std::to_string(p_floor));
    double sum = 0;
    for (double p : probs) sum += p;
    if (sum > 1.0 + 1e-12) throw BadDistributionError("probabilities sum above 1");

    QrToSrResult res;
    auto& rep = res.report;

    // caller-precondition audit; sampled above desk size
    SampleSpec qr_mode;
    if (n > 300) qr_mode = {20000, derive_seed(seed, "qr_input")};
    rep.input_check = quasirandom_check(g, zeta, d, qr_mode);
    if (!rep.input_check.passes)
        throw NotQuasirandomError("input graph fails its (" + std::to_string(zeta) + "," +
                                  std::to_string(d) + ")-quasirandomness check");

    const long long ell_cap = std::max<long long>(1, std::llround(zeta * n / 2.0));
    res.graph = clean_graph(g, zeta / 2.0, d, ell_cap);
    rep.edges_removed = g.edge_count() - res.graph.edge_count();

    // the (qr 0) contract of the cleaned graph, at the full zeta
    rep.cleaned_codegree_ok = true;
    const auto& cg = res.graph;
    for (long long id = 0; id < cg.edge_count() && rep.cleaned_codegree_ok; ++id) {
        const auto& [u, v] = cg.edges()[static_cast<int>(id)];
        const long long codeg = cg.codegree(u, v);
        if (codeg < (d * d - zeta) * n || codeg > (d * d + zeta) * n ||
            mono_codegree(cg, u, v).count > zeta * n)
            rep.cleaned_codegree_ok = false;
    }

    const int r = static_cast<int>(probs.size());
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        rep.attempts = attempt + 1;
        Partition vp = random_partition(n, probs, derive_seed(seed, "qr_to_sr") + attempt);
        const auto groups = vp.groups();
        const auto sizes = vp.sizes();

        // (A1) part sizes
        rep.sizes_ok = true;
        for (int i = 0; i < r; ++i) {
            const double target = probs[i] * n;
            if (sizes[i] < (1 - zeta) * target || sizes[i] > (1 + zeta) * target)
                rep.sizes_ok = false;
        }
        if (!rep.sizes_ok) {
            rep.failures.push_back("attempt " + std::to_string(attempt) + ": A1 part sizes");
            continue;
        }

        // (A3) per-edge cross-part codegrees and monochromatic caps
        rep.edge_codegree_ok = true;
        for (long long id = 0; id < cg.edge_count() && rep.edge_codegree_ok; ++id) {
            const auto& [u, v] = cg.edges()[static_cast<int>(id)];
            const auto scan = scan_edge(cg, u, v, vp.part_of, r);
            for (int i = 0; i < r; ++i) {
                const double si = static_cast<double>(sizes[i]);
                if (scan.mono_by_part[i] > zeta * si ||
                    scan.codeg_by_part[i] < (d * d - zeta) * si ||
                    scan.codeg_by_part[i] > (d * d + zeta) * si) {
                    rep.edge_codegree_ok = false;
                    break;
                }
            }
        }
        if (!rep.edge_codegree_ok) {
            rep.failures.push_back("attempt " + std::to_string(attempt) + ": A3 edge codegrees");
            continue;
        }

        // (A2) cross-part superregularity, sampled surrogate
        rep.superregular_ok = true;
        for (int i = 0; i < r && rep.superregular_ok; ++i)
            for (int j = i + 1; j < r && rep.superregular_ok; ++j) {
                SampleSpec mode{50, derive_seed(seed, "qr_sr_pair") + attempt * 97 + i * 13 + j};
                const auto sr = superregular_check(cg, groups[i], groups[j], zeta, d, mode);
                if (!sr.passes) rep.superregular_ok = false;
            }
        if (!rep.superregular_ok) {
            rep.failures.push_back("attempt " + std::to_string(attempt) +
                                   ": A2 cross-part superregularity");
            continue;
        }

        // (A4) within-part quasirandomness
        rep.within_part_ok = true;
        for (int i = 0; i < r && rep.within_part_ok; ++i) {
            std::vector<std::tuple<int, int, long long>> sub_edges;
            std::vector<int> local(n, -1);
            for (std::size_t k = 0; k < groups[i].size(); ++k) local[groups[i][k]] =
                static_cast<int>(k);
            for (long long id = 0; id < cg.edge_count(); ++id) {
                const auto& [u, v] = cg.edges()[static_cast<int>(id)];
                if (local[u] >= 0 && local[v] >= 0)
                    sub_edges.emplace_back(local[u], local[v],
                                           cg.colour_label(cg.colour_of(static_cast<int>(id))));
            }
            EdgeColouredGraph sub =
                EdgeColouredGraph::build(static_cast<int>(groups[i].size()), sub_edges);
            SampleSpec mode;
            if (groups[i].size() > 200)
                mode = {20000, derive_seed(seed, "qr_within") + attempt * 31 + i};
            if (!quasirandom_check(sub, zeta, d, mode).passes) rep.within_part_ok = false;
        }
        if (!rep.within_part_ok) {
            rep.failures.push_back("attempt " + std::to_string(attempt) +
                                   ": A4 within-part quasirandomness");
            continue;
        }

        rep.passed = true;
        res.partition = std::move(vp);
        return res;
    }

    std::string last = rep.failures.empty() ? "none" : rep.failures.back();
    throw RetriesExhaustedError("qr_to_sr: no partition passed after " +
                                    std::to_string(max_retries) + " attempts; last failure: " +
                                    last,
                                last);
}

PartitionEdgeStats partition_edge_stats(const EdgeColouredGraph& g, const Partition& vp,
                                        bool per_colour) {
    PartitionEdgeStats st;
    st.parts = vp.parts();
    st.counts.assign(st.parts, std::vector<long long>(st.parts, 0));
    st.per_colour = per_colour;
    if (per_colour)
        st.colour_counts.assign(g.colour_count(),
                                std::vector<std::vector<long long>>(
                                    st.parts, std::vector<long long>(st.parts, 0)));
    for (long long id = 0; id < g.edge_count(); ++id) {
        const auto& [u, v] = g.edges()[static_cast<int>(id)];
        const int pu = vp.part_of[u], pv = vp.part_of[v];
        if (pu < 0 || pv < 0) {
            ++st.unassigned_incident;
            continue;
        }
        const int a = std::min(pu, pv), b = std::max(pu, pv);
        ++st.counts[a][b];
        if (a != b) st.counts[b][a] = st.counts[a][b];
        if (per_colour) {
            auto& m = st.colour_counts[g.colour_of(static_cast<int>(id))];
            ++m[a][b];
            if (a != b) m[b][a] = m[a][b];
        }
    }
    return st;
}

ColourPartitionStats colour_partition_stats(const EdgeColouredGraph& g,
                                            const std::vector<std::vector<int>>& family,
                                            const std::vector<int>& anchor_set,
                                            const Partition& colour_partition, int j) {
    if (j < 0 || j >= colour_partition.parts())
        throw BadDistributionError("colour partition part index out of range");
    ColourPartitionStats st;
    std::vector<char> in_anchor(g.vertex_count(), 0);
    for (int v : anchor_set) in_anchor[v] = 1;

    std::vector<char> seen_colour(g.colour_count(), 0);
    const double pj = colour_partition.probs[j];
    for (const auto& member : family) {
        bool rainbow = true;
        std::vector<int> member_colours;
        for (int id : member) {
            const int c = g.colour_of(id);
            if (seen_colour[c]) rainbow = false;
            seen_colour[c] = 1;
            member_colours.push_back(c);
            const auto& [u, v] = g.edges()[id];
            if (in_anchor[u] && in_anchor[v] && st.hypotheses_ok) {
                st.hypotheses_ok = false;
                st.violation = "anchor set not independent in a member";
            }
        }
        for (int c : member_colours) seen_colour[c] = 0;
        if (!rainbow && st.hypotheses_ok) {
            st.hypotheses_ok = false;
            st.violation = "family member is not rainbow";
        }
        bool inside = true;
        for (int c : member_colours)
            if (colour_partition.part_of[c] != j) {
                inside = false;
                break;
            }
        if (inside) ++st.count;
        st.prediction += std::pow(pj, static_cast<double>(member.size()));
    }
    return st;
}

} // namespace rainbow
