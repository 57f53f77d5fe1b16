#include <doctest.h>

#include <set>

#include "rainbow/designs.hpp"
#include "rainbow/errors.hpp"

using namespace rainbow;

namespace {

// direct pair-coverage audit, independent of ResolvableDesign::audit
void check_pair_coverage(const ResolvableDesign& d, int expected) {
    std::vector<std::vector<int>> cover(d.b, std::vector<int>(d.b, 0));
    for (const auto& cls : d.classes)
        for (const auto& block : cls)
            for (std::size_t i = 0; i < block.size(); ++i)
                for (std::size_t j = i + 1; j < block.size(); ++j) {
                    ++cover[block[i]][block[j]];
                    ++cover[block[j]][block[i]];
                }
    for (int x = 0; x < d.b; ++x)
        for (int y = 0; y < d.b; ++y) {
            if (x == y) continue;
            if (expected >= 0)
                CHECK(cover[x][y] == expected);
            else
                CHECK(cover[x][y] <= 1);
        }
}

} // namespace

TEST_CASE("one_factorization: b = 4") {
    const auto d = one_factorization(4);
    CHECK(d.classes.size() == 3);
    check_pair_coverage(d, 1);
}

TEST_CASE("one_factorization: b = 2 is the single pair") {
    const auto d = one_factorization(2);
    REQUIRE(d.classes.size() == 1);
    REQUIRE(d.classes[0].size() == 1);
    CHECK(d.classes[0][0] == std::vector<int>{0, 1});
}

TEST_CASE("one_factorization: b = 20 covers every pair once") {
    const auto d = one_factorization(20);
    CHECK(d.classes.size() == 19);
    check_pair_coverage(d, 1);
}

TEST_CASE("one_factorization rejects odd order") {
    CHECK_THROWS_AS(one_factorization(5), OddOrderError);
    CHECK_THROWS_AS(one_factorization(0), OddOrderError);
}

TEST_CASE("resolvable_design: affine plane of order 3") {
    const auto d = resolvable_design(3, 1, 1.0); // b = 9
    CHECK(d.b == 9);
    CHECK(d.g == 4);
    CHECK(d.classes.size() == 4);
    for (const auto& cls : d.classes) CHECK(cls.size() == 3);
    check_pair_coverage(d, 1); // every pair in exactly one triple
}

TEST_CASE("resolvable_design: truncation via rho") {
    const auto d = resolvable_design(2, 3, 0.5); // b = 8, g = 7, floor(3.5) = 3
    CHECK(d.b == 8);
    CHECK(d.degree == 3);
    CHECK(d.classes.size() == 3);
    check_pair_coverage(d, -1); // codegree at most 1
    // each point in exactly `degree` blocks
    std::vector<int> deg(d.b, 0);
    for (const auto& cls : d.classes)
        for (const auto& block : cls)
            for (int p : block) ++deg[p];
    for (int p = 0; p < d.b; ++p) CHECK(deg[p] == 3);
}

TEST_CASE("resolvable_design: unsupported parameters surface as errors") {
    CHECK_THROWS_AS(resolvable_design(7, 2, 1.0), UnsupportedParametersError); // b = 98 > 30
    CHECK_THROWS_AS(resolvable_design(1, 1, 1.0), UnsupportedParametersError);
}

TEST_CASE("resolvable_design: backtracking covers small Kirkman-type instances") {
    // r = 3, b = 15, a quarter of the classes
    const auto d = resolvable_design(3, 2, 0.45); // g = 7, degree 3
    CHECK(d.b == 15);
    CHECK(d.degree == 3);
    check_pair_coverage(d, -1);
}

TEST_CASE("mols: cyclic squares of prime order are orthogonal") {
    const auto squares = mols(2, 5);
    REQUIRE(squares.size() == 2);
    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(pairs.emplace(squares[0][i][j], squares[1][i][j]).second);
    CHECK(pairs.size() == 25);

    // each square is Latin
    for (const auto& sq : squares)
        for (int i = 0; i < 5; ++i) {
            std::set<int> row, col;
            for (int j = 0; j < 5; ++j) {
                row.insert(sq[i][j]);
                col.insert(sq[j][i]);
            }
            CHECK(row.size() == 5);
            CHECK(col.size() == 5);
        }
}

TEST_CASE("mols: order 3") {
    const auto squares = mols(2, 3);
    std::set<std::pair<int, int>> pairs;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) pairs.emplace(squares[0][i][j], squares[1][i][j]);
    CHECK(pairs.size() == 9);
}

TEST_CASE("mols: error contracts") {
    CHECK_THROWS_AS(mols(2, 4), NonPrimeOrderError);
    CHECK_THROWS_AS(mols(5, 5), TooManySquaresError);
}
