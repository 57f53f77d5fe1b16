#pragma once

#include <vector>

namespace rainbow {

/// A resolvable block design on points [b]: `degree` parallel classes, each a
/// partition of the points into blocks of size r, with every pair of points
/// in at most one block overall. Constructors audit these invariants before
/// returning.
struct ResolvableDesign {
    int r = 0;
    int b = 0;
    int g = 0;      // replication bound (b-1)/(r-1)
    int degree = 0; // number of classes = floor(rho * g)
    std::vector<std::vector<std::vector<int>>> classes;

    void audit(bool expect_full_coverage) const; // throws on violation
};

/// Round-robin (circle method) 1-factorization of K_b; b even.
ResolvableDesign one_factorization(int b);

/// Resolvable design on b = r(r-1)b' + r points with floor(rho g) classes.
/// Native constructions: r = 2 (round robin) and r = 3, b = 9 (AG(2,3));
/// other parameters go through bounded backtracking for b <= 30.
ResolvableDesign resolvable_design(int r, int b_prime, double rho);

/// k mutually orthogonal Latin squares of prime order b (cyclic construction
/// L_a(i,j) = i + a j mod b); k <= b - 1.
std::vector<std::vector<std::vector<int>>> mols(int k, int b);

} // namespace rainbow
