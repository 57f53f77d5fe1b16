#include "rainbow/generate.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rainbow/designs.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/rng.hpp"

namespace rainbow {

EdgeColouredGraph generate_kn_proper(int n) {
    std::vector<std::tuple<int, int, long long>> edges;
    if (n % 2 == 0) {
        const ResolvableDesign f = one_factorization(n);
        for (std::size_t c = 0; c < f.classes.size(); ++c)
            for (const auto& pair : f.classes[c])
                edges.emplace_back(pair[0], pair[1], static_cast<long long>(c));
    } else {
        // i + j mod n is a proper n-colouring of odd K_n
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j, (i + j) % n);
    }
    return EdgeColouredGraph::build(n, edges);
}

namespace {

// Greedy bounded colouring of a fixed edge list: each edge takes a colour
// with spare global and local capacity, preferring emptier classes so the
// classes fill evenly.
EdgeColouredGraph colour_bounded(int n, const std::vector<std::pair<int, int>>& raw_edges,
                                 int g, int ell, std::uint64_t seed) {
    const long long e_total = static_cast<long long>(raw_edges.size());
    if (g < 1 || ell < 1) throw InfeasibleParamsError("bounds must be at least 1");
    int max_deg = 0;
    {
        std::vector<int> deg(n, 0);
        for (const auto& [u, v] : raw_edges) {
            ++deg[u];
            ++deg[v];
        }
        for (int v = 0; v < n; ++v) max_deg = std::max(max_deg, deg[v]);
    }
    long long m = std::max((e_total + g - 1) / std::max(1, g),
                           static_cast<long long>((max_deg + ell - 1) / ell));
    m = std::max<long long>(m, 1);
    // headroom so the greedy pass does not wedge
    m += std::max<long long>(2, m / 4);
    if (m > 4 * e_total + 4) m = 4 * e_total + 4;

    Rng rng(derive_seed(seed, "colour_bounded"));
    for (int attempt = 0; attempt < 8; ++attempt, m += std::max<long long>(2, m / 4)) {
        std::vector<int> class_size(m, 0);
        std::vector<std::vector<int>> local(n, std::vector<int>(m, 0));
        std::vector<std::tuple<int, int, long long>> coloured;
        std::vector<int> order(e_total);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        bool stuck = false;
        for (int idx : order) {
            const auto& [u, v] = raw_edges[idx];
            // probe random colours, then fall back to the emptiest feasible
            int chosen = -1;
            for (int probe = 0; probe < 12 && chosen < 0; ++probe) {
                const int c = static_cast<int>(rng.below(m));
                if (class_size[c] < g && local[u][c] < ell && local[v][c] < ell) chosen = c;
            }
            if (chosen < 0) {
                for (int c = 0; c < m; ++c)
                    if (class_size[c] < g && local[u][c] < ell && local[v][c] < ell &&
                        (chosen < 0 || class_size[c] < class_size[chosen]))
                        chosen = c;
            }
            if (chosen < 0) {
                stuck = true;
                break;
            }
            ++class_size[chosen];
            ++local[u][chosen];
            ++local[v][chosen];
            coloured.emplace_back(u, v, chosen);
        }
        if (stuck) continue;
        EdgeColouredGraph out = EdgeColouredGraph::build(n, coloured);
        const BoundednessReport audit = boundedness(out);
        if (audit.g <= g && audit.ell <= ell) return out;
    }
    throw InfeasibleParamsError("could not colour " + std::to_string(e_total) +
                                " edges within g=" + std::to_string(g) +
                                ", ell=" + std::to_string(ell));
}

} // namespace

EdgeColouredGraph generate_kn_bounded(int n, int g, int ell, std::uint64_t seed) {
    if (static_cast<long long>(ell) * (n - 1) < n - 1 && n > 1)
        throw InfeasibleParamsError("local bound too small");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return colour_bounded(n, edges, g, ell, seed);
}

EdgeColouredGraph generate_gnp_coloured(int n, double p, int g, int ell, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw InfeasibleParamsError("p must lie in [0,1]");
    Rng rng(derive_seed(seed, "gnp_edges"));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) edges.emplace_back(i, j);
    return colour_bounded(n, edges, g, ell, seed + 1);
}

std::vector<std::vector<long long>> generate_latin_cyclic(int n) {
    std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = (i + j) % n;
    return a;
}

std::vector<std::vector<long long>> generate_latin_random(int n, std::uint64_t seed) {
    auto a = generate_latin_cyclic(n);
    Rng rng(derive_seed(seed, "latin_random"));
    // intercalate flips: swap a 2x2 subsquare holding symbols {x y / y x}
    long long flips = 0;
    for (long long it = 0; it < 40LL * n * n && flips < 10LL * n * n; ++it) {
        const int r1 = static_cast<int>(rng.below(n)), r2 = static_cast<int>(rng.below(n));
        const int c1 = static_cast<int>(rng.below(n)), c2 = static_cast<int>(rng.below(n));
        if (r1 == r2 || c1 == c2) continue;
        if (a[r1][c1] == a[r2][c2] && a[r1][c2] == a[r2][c1] && a[r1][c1] != a[r1][c2]) {
            std::swap(a[r1][c1], a[r1][c2]);
            std::swap(a[r2][c1], a[r2][c2]);
            ++flips;
        }
    }
    // isotopy shuffle
    std::vector<int> rp(n), cp(n), sp(n);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::iota(sp.begin(), sp.end(), 0);
    rng.shuffle(rp);
    rng.shuffle(cp);
    rng.shuffle(sp);
    std::vector<std::vector<long long>> b(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i][j] = sp[a[rp[i]][cp[j]]];
    return b;
}

std::vector<std::vector<long long>> read_array_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<std::vector<long long>> a;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<long long> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                row.push_back(std::stoll(cell));
            } catch (...) {
                throw ParseError("bad CSV cell '" + cell + "'");
            }
        }
        a.push_back(std::move(row));
    }
    if (a.empty()) throw ParseError("empty CSV " + path);
    for (const auto& row : a)
        if (row.size() != a.size()) throw ParseError("CSV array is not square");
    return a;
}

void write_array_csv(const std::string& path, const std::vector<std::vector<long long>>& a) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    for (const auto& row : a) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << row[j];
        out << '\n';
    }
}

} // namespace rainbow
