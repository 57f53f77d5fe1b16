#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/generate.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/rng.hpp"

using namespace rainbow;

TEST_CASE("build: rainbow triangle") {
    const auto g = EdgeColouredGraph::build(3, {{0, 1, 0}, {1, 2, 1}, {0, 2, 2}});
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.colour_count() == 3);
    CHECK(g.degree(0) == 2);
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(0, 0));
}

TEST_CASE("build: rejects self-loops, duplicates, range violations") {
    CHECK_THROWS_AS(EdgeColouredGraph::build(2, {{0, 0, 0}}), SelfLoopError);
    CHECK_THROWS_AS(EdgeColouredGraph::build(3, {{0, 1, 0}, {1, 0, 1}}), DuplicateEdgeError);
    CHECK_THROWS_AS(EdgeColouredGraph::build(2, {{0, 5, 0}}), VertexOutOfRangeError);
}

TEST_CASE("build: 1-factorization of K_4 has three classes of two edges") {
    const auto g = EdgeColouredGraph::build(
        4, {{0, 1, 0}, {2, 3, 0}, {0, 2, 1}, {1, 3, 1}, {0, 3, 2}, {1, 2, 2}});
    CHECK(g.colour_count() == 3);
    for (int c = 0; c < 3; ++c) CHECK(g.colour_class(c).size() == 2);
    const auto rep = boundedness(g);
    CHECK(rep.g == 2);
    CHECK(rep.ell == 1);
}

TEST_CASE("boundedness: monochromatic K_3") {
    const auto rep = boundedness(oracles::mono_kn(3));
    CHECK(rep.g == 3);
    CHECK(rep.ell == 2);
    CHECK(rep.worst_colour == 0);
}

TEST_CASE("boundedness: empty graph throws") {
    const auto g = EdgeColouredGraph::build(4, {});
    CHECK_THROWS_AS(boundedness(g), EmptyGraphError);
}

TEST_CASE("boundedness: cyclic Latin square of order 5 as K_{5,5}") {
    const auto a = generate_latin_cyclic(5);
    std::vector<std::tuple<int, int, long long>> edges;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) edges.emplace_back(i, 5 + j, a[i][j]);
    const auto g = EdgeColouredGraph::build(10, edges);
    const auto rep = boundedness(g);
    CHECK(rep.g == 5);
    CHECK(rep.ell == 1);
}

TEST_CASE("colour_subgraph: identity, empty, single class") {
    const auto g = generate_kn_proper(4);
    std::vector<int> all;
    for (int c = 0; c < g.colour_count(); ++c) all.push_back(c);

    const auto same = colour_subgraph(g, all);
    CHECK(same.edge_count() == g.edge_count());
    CHECK(same.colour_count() == g.colour_count());

    const auto none = colour_subgraph(g, {});
    CHECK(none.edge_count() == 0);
    CHECK(none.vertex_count() == 4);

    const auto one = colour_subgraph(g, {0});
    CHECK(one.edge_count() == 2); // a perfect matching of K_4
    for (long long id = 0; id < one.edge_count(); ++id)
        CHECK(one.colour_of(static_cast<int>(id)) == 0);
}

TEST_CASE("colour_subgraph partitions the edges") {
    // property: over a partition of the colour set, subgraphs are disjoint
    // and their union is G
    Rng rng(20240811);
    const auto g = generate_gnp_coloured(40, 0.4, 30, 3, 99);
    std::vector<int> side_of(g.colour_count());
    for (auto& s : side_of) s = static_cast<int>(rng.below(3));
    long long total = 0;
    std::set<std::pair<int, int>> seen;
    for (int part = 0; part < 3; ++part) {
        std::vector<int> colours;
        for (int c = 0; c < g.colour_count(); ++c)
            if (side_of[c] == part) colours.push_back(c);
        const auto sub = colour_subgraph(g, colours);
        total += sub.edge_count();
        for (const auto& e : sub.edges()) CHECK(seen.insert(e).second);
    }
    CHECK(total == g.edge_count());
}

TEST_CASE("mono_codegree examples") {
    const auto k3 = oracles::mono_kn(3);
    const auto [count, witnesses] = mono_codegree(k3, 0, 1);
    CHECK(count == 1);
    REQUIRE(witnesses.size() == 1);
    CHECK(witnesses[0] == 2);

    // properly coloured: always zero
    const auto proper = generate_kn_proper(8);
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) CHECK(mono_codegree(proper, u, v).count == 0);

    // two common neighbours, one monochromatic
    const auto g = EdgeColouredGraph::build(
        4, {{0, 2, 7}, {1, 2, 7}, {0, 3, 7}, {1, 3, 8}});
    const auto mc = mono_codegree(g, 0, 1);
    CHECK(mc.count == 1);
    CHECK(mc.witnesses == std::vector<int>{2});
}

TEST_CASE("mono_codegree is symmetric and matches the oracle") {
    const auto g = generate_gnp_coloured(30, 0.5, 20, 4, 5);
    for (int u = 0; u < 30; ++u)
        for (int v = u + 1; v < 30; ++v) {
            const int c1 = mono_codegree(g, u, v).count;
            CHECK(c1 == mono_codegree(g, v, u).count);
            CHECK(c1 == oracles::brute_mono_codegree(g, u, v));
        }
}

TEST_CASE("graph io round-trip and strictness") {
    const auto g = generate_gnp_coloured(12, 0.5, 10, 3, 3);
    std::ostringstream out;
    write_graph(out, g);
    std::istringstream in(out.str());
    const auto back = read_graph(in);
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edge_count() == g.edge_count());
    CHECK(back.colour_count() == g.colour_count());
    for (long long id = 0; id < g.edge_count(); ++id) {
        const auto& [u, v] = g.edges()[static_cast<int>(id)];
        const int bid = back.find_edge(u, v);
        REQUIRE(bid >= 0);
        CHECK(back.colour_label(back.colour_of(bid)) ==
              g.colour_label(g.colour_of(static_cast<int>(id))));
    }

    std::istringstream trailing("2 1\n0 1 0 junk\n");
    CHECK_THROWS_AS(read_graph(trailing), ParseError);
    std::istringstream bad_header("2\n");
    CHECK_THROWS_AS(read_graph(bad_header), ParseError);
}

TEST_CASE("codegree matches the oracle") {
    const auto g = generate_gnp_coloured(25, 0.4, 30, 5, 11);
    for (int u = 0; u < 25; ++u)
        for (int v = u + 1; v < 25; ++v)
            CHECK(g.codegree(u, v) == oracles::brute_codegree(g, u, v));
}
