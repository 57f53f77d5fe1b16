#include "rainbow/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

namespace {

bool codegree_bad(long long codeg, double d, double eps, double scale) {
    const double lo = (d * d - eps) * scale;
    const double hi = (d * d + eps) * scale;
    return codeg < lo || codeg > hi;
}

} // namespace

int IrregularityGraph::max_degree() const {
    if (degree.empty()) return 0;
    return *std::max_element(degree.begin(), degree.end());
}

QuasirandomReport quasirandom_check(const EdgeColouredGraph& g, double eps, double d,
                                    SampleSpec mode) {
    if (!(d > 0.0 && d <= 1.0)) throw BadDistributionError("density d must lie in (0,1]");
    if (!(eps > 0.0)) throw BadDistributionError("eps must be positive");
    const int n = g.vertex_count();
    QuasirandomReport rep;
    rep.d = d;
    rep.eps = eps;
    rep.d_hat = g.density();

    for (int v = 0; v < n; ++v)
        rep.eps_degree = std::max(rep.eps_degree,
                                  std::abs(static_cast<double>(g.degree(v)) / n - d));

    if (mode.exact()) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (codegree_bad(g.codegree(u, v), d, eps, n)) ++rep.bad_pair_count;
        rep.pairs_checked = static_cast<long long>(n) * (n - 1) / 2;
    } else {
        if (mode.pairs < 1) throw BadDistributionError("sampled mode needs k >= 1");
        Rng rng(derive_seed(mode.seed, "quasirandom_check"));
        long long bad = 0;
        for (long long i = 0; i < mode.pairs; ++i) {
            int u = rng.uniform_int(0, n - 1);
            int v = rng.uniform_int(0, n - 2);
            if (v >= u) ++v;
            if (codegree_bad(g.codegree(u, v), d, eps, n)) ++bad;
        }
        // unbiased estimate of the bad-pair count
        const double total = static_cast<double>(n) * (n - 1) / 2.0;
        rep.bad_pair_count = static_cast<long long>(
            std::llround(static_cast<double>(bad) / mode.pairs * total));
        rep.pairs_checked = mode.pairs;
        rep.sampled = true;
        rep.seed = mode.seed;
    }
    rep.passes = rep.eps_degree <= eps &&
                 static_cast<double>(rep.bad_pair_count) <= eps * static_cast<double>(n) * n;
    return rep;
}

namespace {

// Max/min bipartite density over Y-prefixes: with X fixed, the extremal Y of
// each size is a prefix of the opposite side sorted by degree into X.
void scan_density_extremes(std::vector<int>& degs_into_x, int x_size, int q_min,
                           double d, double& worst_dev) {
    std::sort(degs_into_x.begin(), degs_into_x.end(), std::greater<int>());
    long long pref = 0;
    for (int k = 1; k <= static_cast<int>(degs_into_x.size()); ++k) {
        pref += degs_into_x[k - 1];
        if (k < q_min) continue;
        const double dens = static_cast<double>(pref) / (static_cast<double>(x_size) * k);
        worst_dev = std::max(worst_dev, std::abs(dens - d));
    }
    // ascending order = suffix sums of the descending order
    long long total = std::accumulate(degs_into_x.begin(), degs_into_x.end(), 0LL);
    pref = 0;
    for (int k = 1; k <= static_cast<int>(degs_into_x.size()); ++k) {
        pref += degs_into_x[static_cast<int>(degs_into_x.size()) - k];
        if (k < q_min) continue;
        const double dens = static_cast<double>(pref) / (static_cast<double>(x_size) * k);
        worst_dev = std::max(worst_dev, std::abs(dens - d));
    }
    (void)total;
}

} // namespace

SuperregularReport superregular_check(const EdgeColouredGraph& g, const std::vector<int>& u_side,
                                      const std::vector<int>& w_side, double eps, double d,
                                      SampleSpec mode) {
    if (u_side.empty() || w_side.empty()) throw EmptyPartError("superregular_check: empty part");
    {
        std::vector<char> in_u(g.vertex_count(), 0);
        for (int v : u_side) in_u[v] = 1;
        for (int v : w_side)
            if (in_u[v]) throw PartsOverlapError("superregular_check: parts share vertex " +
                                                 std::to_string(v));
    }

    SuperregularReport rep;
    rep.d = d;
    rep.eps = eps;

    const auto cross_degree = [&](int v, const std::vector<char>& opposite) {
        int deg = 0;
        for (const auto& h : g.adjacency(v)) deg += opposite[h.to];
        return deg;
    };
    std::vector<char> in_u(g.vertex_count(), 0), in_w(g.vertex_count(), 0);
    for (int v : u_side) in_u[v] = 1;
    for (int v : w_side) in_w[v] = 1;

    for (int v : u_side)
        rep.worst_degree_dev = std::max(
            rep.worst_degree_dev,
            std::abs(static_cast<double>(cross_degree(v, in_w)) / w_side.size() - d));
    for (int v : w_side)
        rep.worst_degree_dev = std::max(
            rep.worst_degree_dev,
            std::abs(static_cast<double>(cross_degree(v, in_u)) / u_side.size() - d));
    rep.degree_ok = rep.worst_degree_dev <= eps;

    const bool u_smaller = u_side.size() <= w_side.size();
    const std::vector<int>& small = u_smaller ? u_side : w_side;
    const std::vector<int>& large = u_smaller ? w_side : u_side;

    if (static_cast<int>(small.size()) <= 14 && mode.exact()) {
        // exact: enumerate subsets X of the smaller side, pair with extremal
        // prefixes on the larger side
        const int s = static_cast<int>(small.size());
        std::vector<std::uint32_t> mask(large.size(), 0);
        for (std::size_t j = 0; j < large.size(); ++j)
            for (int i = 0; i < s; ++i)
                if (g.has_edge(large[j], small[i])) mask[j] |= 1u << i;
        const int x_min = static_cast<int>(std::ceil(eps * s));
        const int q_min = std::max(1, static_cast<int>(std::ceil(eps * large.size())));
        std::vector<int> degs(large.size());
        for (std::uint32_t x = 1; x < (1u << s); ++x) {
            const int xs = __builtin_popcount(x);
            if (xs < std::max(1, x_min)) continue;
            for (std::size_t j = 0; j < large.size(); ++j)
                degs[j] = __builtin_popcount(mask[j] & x);
            scan_density_extremes(degs, xs, q_min, d, rep.worst_density_dev);
        }
        rep.density_ok = rep.worst_density_dev <= eps;
        rep.passes = rep.degree_ok && rep.density_ok;
        return rep;
    }

    // Sampled surrogate: random subset pairs at the threshold sizes, judged
    // with a 3-sigma sampling allowance, plus the codegree criterion of the
    // almost-quasirandom theorem.
    rep.sampled = true;
    rep.seed = mode.seed;
    const long long samples = mode.pairs > 0 ? mode.pairs : 50;
    Rng rng(derive_seed(mode.seed, "superregular_check"));
    const int xs = std::max(1, static_cast<int>(std::ceil(eps * small.size())));
    const int ys = std::max(1, static_cast<int>(std::ceil(eps * large.size())));
    const double sigma = std::sqrt(0.25 / (static_cast<double>(xs) * ys));
    bool density_ok = true;
    std::vector<int> small_ix(small.size()), large_ix(large.size());
    std::iota(small_ix.begin(), small_ix.end(), 0);
    std::iota(large_ix.begin(), large_ix.end(), 0);
    for (long long it = 0; it < samples; ++it) {
        rng.shuffle(small_ix);
        rng.shuffle(large_ix);
        long long e = 0;
        for (int i = 0; i < xs; ++i)
            for (int j = 0; j < ys; ++j)
                e += g.has_edge(small[small_ix[i]], large[large_ix[j]]);
        const double dens = static_cast<double>(e) / (static_cast<double>(xs) * ys);
        rep.worst_density_dev = std::max(rep.worst_density_dev, std::abs(dens - d));
        if (std::abs(dens - d) > eps + 3 * sigma) density_ok = false;
    }
    rep.samples_tried = samples;

    // codegree criterion: same-side pairs whose codegree into the opposite
    // side misses (d^2 +- eps) |opposite|
    const auto count_bad = [&](const std::vector<int>& side, const std::vector<char>& opp,
                               std::size_t opp_size) {
        long long bad = 0;
        for (std::size_t i = 0; i < side.size(); ++i)
            for (std::size_t j = i + 1; j < side.size(); ++j) {
                long long codeg = 0;
                for (int w : g.common_neighbours(side[i], side[j])) codeg += opp[w];
                if (codegree_bad(codeg, d, eps, static_cast<double>(opp_size))) ++bad;
            }
        return bad;
    };
    rep.bad_codegree_pairs = count_bad(u_side, in_w, w_side.size()) +
                             count_bad(w_side, in_u, u_side.size());
    const double n_min = static_cast<double>(small.size());
    rep.bad_codegree_allowed = static_cast<long long>(eps * n_min * n_min);
    rep.density_ok = density_ok && rep.bad_codegree_pairs <= rep.bad_codegree_allowed;
    rep.passes = rep.degree_ok && rep.density_ok;
    return rep;
}

IrregularityGraph irregularity_graph(const EdgeColouredGraph& g, double eps, double d) {
    IrregularityGraph ir;
    ir.n = g.vertex_count();
    ir.kind = IrKind::codegree;
    ir.eps = eps;
    ir.d = d;
    ir.degree.assign(ir.n, 0);
    for (int u = 0; u < ir.n; ++u)
        for (int v = u + 1; v < ir.n; ++v)
            if (codegree_bad(g.codegree(u, v), d, eps, ir.n)) {
                ir.edges.emplace_back(u, v);
                ++ir.degree[u];
                ++ir.degree[v];
            }
    return ir;
}

IrregularityGraph irregularity_graph_partite(const EdgeColouredGraph& g,
                                             const std::vector<int>& part_of, int parts,
                                             double eps, double d) {
    IrregularityGraph ir;
    ir.n = g.vertex_count();
    ir.kind = IrKind::partite_codegree;
    ir.eps = eps;
    ir.d = d;
    ir.degree.assign(ir.n, 0);
    std::vector<long long> part_size(parts, 0);
    for (int v = 0; v < ir.n; ++v)
        if (part_of[v] >= 0) ++part_size[part_of[v]];

    std::vector<long long> codeg_by_part(parts);
    for (int u = 0; u < ir.n; ++u) {
        if (part_of[u] < 0) continue;
        for (int v = u + 1; v < ir.n; ++v) {
            if (part_of[v] < 0) continue;
            std::fill(codeg_by_part.begin(), codeg_by_part.end(), 0);
            for (int w : g.common_neighbours(u, v))
                if (part_of[w] >= 0) ++codeg_by_part[part_of[w]];
            bool bad = false;
            for (int j = 0; j < parts && !bad; ++j) {
                if (j == part_of[u] || j == part_of[v] || part_size[j] == 0) continue;
                bad = codegree_bad(codeg_by_part[j], d, eps, static_cast<double>(part_size[j]));
            }
            if (bad) {
                ir.edges.emplace_back(u, v);
                ++ir.degree[u];
                ++ir.degree[v];
                if (part_of[u] == part_of[v])
                    ++ir.same_part_edge_count;
                else
                    ++ir.cross_part_edge_count;
            }
        }
    }
    return ir;
}

IrregularityGraph colour_irregularity_graph(const EdgeColouredGraph& g, long long ell_threshold) {
    if (ell_threshold < 1) throw BadDistributionError("ell threshold must be >= 1");
    IrregularityGraph ir;
    ir.n = g.vertex_count();
    ir.kind = IrKind::colour;
    ir.ell = ell_threshold;
    ir.degree.assign(ir.n, 0);
    for (int u = 0; u < ir.n; ++u)
        for (int v = u + 1; v < ir.n; ++v)
            if (mono_codegree(g, u, v).count >= ell_threshold) {
                ir.edges.emplace_back(u, v);
                ++ir.degree[u];
                ++ir.degree[v];
            }
    return ir;
}

EdgeColouredGraph clean_graph(const EdgeColouredGraph& g, double eps, double d,
                              long long ell_threshold) {
    // Membership of an edge in either irregularity graph only needs the two
    // endpoints, so we avoid materialising the full graphs.
    std::vector<std::tuple<int, int, long long>> kept;
    const int n = g.vertex_count();
    for (long long id = 0; id < g.edge_count(); ++id) {
        const auto& [u, v] = g.edges()[static_cast<int>(id)];
        if (codegree_bad(g.codegree(u, v), d, eps, n)) continue;
        if (mono_codegree(g, u, v).count >= ell_threshold) continue;
        kept.emplace_back(u, v, g.colour_label(g.colour_of(static_cast<int>(id))));
    }
    EdgeColouredGraph cleaned = EdgeColouredGraph::build(n, kept);
    cleaned.remap_colours(g);
    return cleaned;
}

} // namespace rainbow
