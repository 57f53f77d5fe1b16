#include "rainbow/designs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rainbow/errors.hpp"

namespace rainbow {

void ResolvableDesign::audit(bool expect_full_coverage) const {
    if (static_cast<int>(classes.size()) != degree)
        throw UnsupportedParametersError("design: class count mismatch");
    std::vector<int> point_degree(b, 0);
    std::vector<char> pair_used(static_cast<std::size_t>(b) * b, 0);
    for (const auto& cls : classes) {
        std::vector<char> seen(b, 0);
        for (const auto& block : cls) {
            if (static_cast<int>(block.size()) != r)
                throw UnsupportedParametersError("design: block of wrong size");
            for (int p : block) {
                if (p < 0 || p >= b || seen[p]++)
                    throw UnsupportedParametersError("design: class is not a partition");
                ++point_degree[p];
            }
            for (std::size_t i = 0; i < block.size(); ++i)
                for (std::size_t j = i + 1; j < block.size(); ++j) {
                    const int x = std::min(block[i], block[j]), y = std::max(block[i], block[j]);
                    if (pair_used[static_cast<std::size_t>(x) * b + y]++)
                        throw UnsupportedParametersError("design: pair covered twice");
                }
        }
        for (int p = 0; p < b; ++p)
            if (!seen[p]) throw UnsupportedParametersError("design: class misses a point");
    }
    for (int p = 0; p < b; ++p)
        if (point_degree[p] != degree)
            throw UnsupportedParametersError("design: irregular point degree");
    if (expect_full_coverage)
        for (int x = 0; x < b; ++x)
            for (int y = x + 1; y < b; ++y)
                if (!pair_used[static_cast<std::size_t>(x) * b + y])
                    throw UnsupportedParametersError("design: pair left uncovered at rho = 1");
}

ResolvableDesign one_factorization(int b) {
    if (b < 2 || b % 2 != 0) throw OddOrderError("1-factorization needs even b >= 2");
    ResolvableDesign d;
    d.r = 2;
    d.b = b;
    d.g = b - 1;
    d.degree = b - 1;
    if (b == 2) {
        d.classes = {{{0, 1}}};
        d.audit(true);
        return d;
    }
    // circle method: vertex b-1 fixed in the centre, the rest rotate
    const int m = b - 1;
    for (int round = 0; round < m; ++round) {
        std::vector<std::vector<int>> cls;
        cls.push_back({round, b - 1});
        for (int k = 1; k <= (b - 2) / 2; ++k) {
            const int x = (round + k) % m;
            const int y = (round - k + m) % m;
            cls.push_back({std::min(x, y), std::max(x, y)});
        }
        d.classes.push_back(std::move(cls));
    }
    d.audit(true);
    return d;
}

namespace {

ResolvableDesign affine_plane_order3() {
    // AG(2,3): points (x,y) indexed 3x + y; classes = the 4 parallel pencils
    ResolvableDesign d;
    d.r = 3;
    d.b = 9;
    d.g = 4;
    d.degree = 4;
    auto idx = [](int x, int y) { return 3 * x + y; };
    std::vector<std::vector<int>> rows, cols, slope1, slope2;
    for (int c = 0; c < 3; ++c) {
        rows.push_back({idx(c, 0), idx(c, 1), idx(c, 2)});
        cols.push_back({idx(0, c), idx(1, c), idx(2, c)});
        std::vector<int> l1, l2;
        for (int x = 0; x < 3; ++x) {
            l1.push_back(idx(x, (x + c) % 3));
            l2.push_back(idx(x, (2 * x + c) % 3));
        }
        std::sort(l1.begin(), l1.end());
        std::sort(l2.begin(), l2.end());
        slope1.push_back(l1);
        slope2.push_back(l2);
    }
    d.classes = {rows, cols, slope1, slope2};
    d.audit(true);
    return d;
}

// Backtracking construction of `want` parallel classes with pair coverage
// <= 1, bounded by a node budget.
class ClassSearcher {
public:
    ClassSearcher(int r, int b, int want) : r_(r), b_(b), want_(want) {
        pair_used_.assign(static_cast<std::size_t>(b) * b, 0);
    }

    bool run(std::vector<std::vector<std::vector<int>>>& out) {
        out.clear();
        return build_class(out);
    }

private:
    bool pair_ok(int x, int y) const {
        return !pair_used_[static_cast<std::size_t>(std::min(x, y)) * b_ + std::max(x, y)];
    }
    void mark_pairs(const std::vector<int>& block, char v) {
        for (std::size_t i = 0; i < block.size(); ++i)
            for (std::size_t j = i + 1; j < block.size(); ++j)
                pair_used_[static_cast<std::size_t>(std::min(block[i], block[j])) * b_ +
                           std::max(block[i], block[j])] = v;
    }

    bool build_class(std::vector<std::vector<std::vector<int>>>& out) {
        if (static_cast<int>(out.size()) == want_) return true;
        std::vector<std::vector<int>> cls;
        std::vector<char> in_class(b_, 0);
        if (extend_class(out, cls, in_class)) return true;
        return false;
    }

    bool extend_class(std::vector<std::vector<std::vector<int>>>& out,
                      std::vector<std::vector<int>>& cls, std::vector<char>& in_class) {
        if (++nodes_ > budget_) return false;
        int anchor = -1;
        for (int p = 0; p < b_; ++p)
            if (!in_class[p]) {
                anchor = p;
                break;
            }
        if (anchor < 0) {
            out.push_back(cls);
            if (build_class(out)) return true;
            out.pop_back();
            return false;
        }
        std::vector<int> block{anchor};
        in_class[anchor] = 1;
        const bool ok = extend_block(out, cls, in_class, block, anchor + 1);
        in_class[anchor] = 0;
        return ok;
    }

    bool extend_block(std::vector<std::vector<std::vector<int>>>& out,
                      std::vector<std::vector<int>>& cls, std::vector<char>& in_class,
                      std::vector<int>& block, int from) {
        if (static_cast<int>(block.size()) == r_) {
            mark_pairs(block, 1);
            cls.push_back(block);
            const bool ok = extend_class(out, cls, in_class);
            cls.pop_back();
            mark_pairs(block, 0);
            return ok;
        }
        for (int p = from; p < b_; ++p) {
            if (in_class[p]) continue;
            bool fits = true;
            for (int q : block)
                if (!pair_ok(q, p)) {
                    fits = false;
                    break;
                }
            if (!fits) continue;
            block.push_back(p);
            in_class[p] = 1;
            if (extend_block(out, cls, in_class, block, p + 1)) return true;
            in_class[p] = 0;
            block.pop_back();
        }
        return false;
    }

    int r_, b_, want_;
    std::vector<char> pair_used_;
    long long nodes_ = 0;
    long long budget_ = 20'000'000;
};

} // namespace

ResolvableDesign resolvable_design(int r, int b_prime, double rho) {
    if (r < 2 || b_prime < 0 || !(rho > 0.0 && rho <= 1.0))
        throw UnsupportedParametersError("resolvable_design: need r >= 2, b' >= 0, rho in (0,1]");
    const int b = r * (r - 1) * b_prime + r;
    const int g = (b - 1) / (r - 1); // = r b' + 1
    const int degree = static_cast<int>(std::floor(rho * g + 1e-9));

    ResolvableDesign d;
    d.r = r;
    d.b = b;
    d.g = g;
    d.degree = degree;

    if (b == r) { // single block covering everything
        std::vector<int> all(b);
        for (int i = 0; i < b; ++i) all[i] = i;
        for (int i = 0; i < degree; ++i) d.classes.push_back({all});
        d.audit(rho >= 1.0 && degree == g);
        return d;
    }
    if (r == 2) {
        ResolvableDesign f = one_factorization(b);
        f.classes.resize(degree);
        f.degree = degree;
        f.audit(degree == g);
        return f;
    }
    if (r == 3 && b == 9) {
        ResolvableDesign f = affine_plane_order3();
        f.classes.resize(degree);
        f.degree = degree;
        f.audit(degree == g);
        return f;
    }
    if (b > 30)
        throw UnsupportedParametersError("resolvable_design: no construction for r=" +
                                         std::to_string(r) + ", b=" + std::to_string(b));
    ClassSearcher search(r, b, degree);
    if (!search.run(d.classes))
        throw UnsupportedParametersError("resolvable_design: backtracking failed for r=" +
                                         std::to_string(r) + ", b=" + std::to_string(b) +
                                         ", degree=" + std::to_string(degree));
    d.audit(degree == g);
    return d;
}

std::vector<std::vector<std::vector<int>>> mols(int k, int b) {
    if (b < 2) throw NonPrimeOrderError("mols: order must be >= 2");
    for (int q = 2; q * q <= b; ++q)
        if (b % q == 0) throw NonPrimeOrderError("mols: order " + std::to_string(b) +
                                                 " is not prime");
    if (k < 1 || k > b - 1)
        throw TooManySquaresError("mols: at most b-1 = " + std::to_string(b - 1) +
                                  " cyclic squares exist");
    std::vector<std::vector<std::vector<int>>> squares;
    for (int a = 1; a <= k; ++a) {
        std::vector<std::vector<int>> sq(b, std::vector<int>(b));
        for (int i = 0; i < b; ++i)
            for (int j = 0; j < b; ++j) sq[i][j] = (i + a * j) % b;
        squares.push_back(std::move(sq));
    }
    // orthogonality audit: all b^2 ordered symbol pairs appear once
    for (std::size_t s = 0; s < squares.size(); ++s)
        for (std::size_t t = s + 1; t < squares.size(); ++t) {
            std::vector<char> seen(static_cast<std::size_t>(b) * b, 0);
            for (int i = 0; i < b; ++i)
                for (int j = 0; j < b; ++j) {
                    const std::size_t key =
                        static_cast<std::size_t>(squares[s][i][j]) * b + squares[t][i][j];
                    if (seen[key]++)
                        throw UnsupportedParametersError("mols: orthogonality audit failed");
                }
        }
    return squares;
}

} // namespace rainbow
