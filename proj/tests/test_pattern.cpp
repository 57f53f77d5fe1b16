#include <doctest.h>

#include "oracles.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/generate.hpp"
#include "rainbow/pattern.hpp"

using namespace rainbow;

TEST_CASE("automorphism counts of the presets") {
    CHECK(PatternGraph::preset("k3").aut == 6);
    CHECK(PatternGraph::preset("c4").aut == 8);
    CHECK(PatternGraph::preset("path2").aut == 2);
    CHECK(PatternGraph::preset("k2").aut == 2);
    CHECK(PatternGraph::preset("2k2").aut == 8);
    CHECK(PatternGraph::preset("c5").aut == 10);
    CHECK(PatternGraph::cycle(12).aut == 24); // dihedral, set analytically
    CHECK(count_automorphisms(PatternGraph::cycle(8)) == 16);
}

TEST_CASE("partite automorphisms") {
    // K_2 split into singleton parts: both automorphisms preserve the part set
    auto k2 = PatternGraph::from_edges(2, {{0, 1}}, {{0}, {1}});
    CHECK(k2.aut == 2);
    CHECK(k2.aut_partite == 2);
    // path2 with ends in one part: the flip fixes the part system
    auto p2 = PatternGraph::from_edges(3, {{0, 1}, {1, 2}}, {{0, 2}, {1}});
    CHECK(p2.aut_partite == 2);
}

TEST_CASE("parts must be independent") {
    CHECK_THROWS_AS(PatternGraph::from_edges(2, {{0, 1}}, {{0, 1}}), DuplicateEdgeError);
}

TEST_CASE("a_value") {
    CHECK(PatternGraph::preset("k3").a_value == 2);
    CHECK(PatternGraph::cycle(5).a_value == 2);
    CHECK(PatternGraph::cycle(9).a_value == 2);
    // star K_{1,3}: Delta = 3 dominates (a' = 2, a'' = 1)
    const auto star = PatternGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(star.a_value == 3);
    CHECK_THROWS_AS(pattern_a_value(PatternGraph::from_edges(3, {})), NoEdgesError);
    // a(F) <= max{Delta, 3 Delta - 4}
    for (const char* name : {"k3", "c4", "c5", "path2", "2k2"}) {
        const auto f = PatternGraph::preset(name);
        int delta = 0;
        std::vector<int> deg(f.f, 0);
        for (auto [a, b] : f.edges) {
            ++deg[a];
            ++deg[b];
        }
        for (int v = 0; v < f.f; ++v) delta = std::max(delta, deg[v]);
        CHECK(f.a_value <= std::max(delta, 3 * delta - 4));
    }
}

TEST_CASE("count_rainbow: small exact cases") {
    const auto k3 = PatternGraph::preset("k3");
    const auto rainbow_triangle = EdgeColouredGraph::build(3, {{0, 1, 0}, {1, 2, 1}, {0, 2, 2}});
    CHECK(count_rainbow(rainbow_triangle, k3) == 1);

    const auto two_shared = EdgeColouredGraph::build(3, {{0, 1, 0}, {1, 2, 0}, {0, 2, 2}});
    CHECK(count_rainbow(two_shared, k3) == 0);
    CHECK(count_nonrainbow(two_shared, k3) == 1);

    const auto proper_k4 = generate_kn_proper(4);
    CHECK(count_rainbow(proper_k4, k3) == 4);

    const auto mono = oracles::mono_kn(3);
    CHECK(count_rainbow(mono, k3) == 0);
    CHECK(count_nonrainbow(mono, k3) == 1);
}

TEST_CASE("count matches the independent embedding oracle") {
    const auto g = generate_gnp_coloured(18, 0.5, 12, 3, 77);
    for (const char* name : {"k3", "c4", "path2", "2k2"}) {
        const auto f = PatternGraph::preset(name);
        const auto brute = oracles::brute_embeddings(g, f);
        const auto counts = count_pattern(g, f);
        CHECK(counts.rainbow == brute.rainbow_embeddings / f.aut);
        CHECK(counts.total == brute.embeddings / f.aut);
        CHECK(counts.rainbow + counts.nonrainbow == counts.total);
    }
}

TEST_CASE("anchored sums: sum over vertices and edges") {
    const auto g = generate_gnp_coloured(16, 0.5, 12, 3, 13);
    for (const char* name : {"k3", "path2", "2k2"}) {
        const auto f = PatternGraph::preset(name);
        const long long total = count_rainbow(g, f);
        long long by_vertex = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            by_vertex += count_rainbow(g, f, Anchor::at_vertex(v));
        CHECK(by_vertex == static_cast<long long>(f.f) * total);
        long long by_edge = 0;
        for (const auto& [u, v] : g.edges()) by_edge += count_rainbow(g, f, Anchor::at_edge(u, v));
        CHECK(by_edge == static_cast<long long>(f.h()) * total);

        // the bulk per-vertex/per-edge enumerations agree with anchored calls
        const auto per_v = count_rainbow_per_vertex(g, f);
        for (int v = 0; v < g.vertex_count(); ++v)
            CHECK(per_v[v] == count_rainbow(g, f, Anchor::at_vertex(v)));
        const auto per_e = count_rainbow_per_edge(g, f);
        for (long long id = 0; id < g.edge_count(); ++id) {
            const auto& [u, v] = g.edges()[static_cast<int>(id)];
            CHECK(per_e[id] == count_rainbow(g, f, Anchor::at_edge(u, v)));
        }
    }
}

TEST_CASE("edge anchor counts copies through the edge, not the pair") {
    // path2 copies through the edge (0,1) of a path 0-1-2: anchored count
    // must require the anchor edge itself to be used
    const auto g = EdgeColouredGraph::build(4, {{0, 1, 0}, {1, 2, 1}, {2, 3, 2}, {0, 3, 3}});
    const auto p2 = PatternGraph::preset("path2");
    // copies containing edge (0,1): 0-1-2 and 3-0-1
    CHECK(count_rainbow(g, p2, Anchor::at_edge(0, 1)) == 2);
    CHECK_THROWS_AS(count_rainbow(g, p2, Anchor::at_edge(0, 2)), AnchorNotInGraphError);
}

TEST_CASE("degenerate anchor: isolated vertex gives zero") {
    const auto g = EdgeColouredGraph::build(4, {{0, 1, 0}, {1, 2, 1}, {0, 2, 2}});
    CHECK(count_rainbow(g, PatternGraph::preset("k3"), Anchor::at_vertex(3)) == 0);
}

TEST_CASE("partite counting respects injective part maps") {
    // K_{2,2} rainbow-coloured; F = K_2 with singleton parts; targets the two sides
    const auto g = EdgeColouredGraph::build(4, {{0, 2, 0}, {0, 3, 1}, {1, 2, 2}, {1, 3, 3}});
    const auto k2 = PatternGraph::from_edges(2, {{0, 1}}, {{0}, {1}});
    PartiteSpec spec;
    spec.target_sets = {{0, 1}, {2, 3}};
    CHECK(count_rainbow(g, k2, Anchor::none(), &spec) == 4);

    // triangles across three parts of a properly coloured K_6
    const auto k6 = generate_kn_proper(6);
    const auto k3 =
        PatternGraph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, {{0}, {1}, {2}});
    PartiteSpec spec3;
    spec3.target_sets = {{0, 1}, {2, 3}, {4, 5}};
    long long expected = 0;
    for (int a : spec3.target_sets[0])
        for (int b : spec3.target_sets[1])
            for (int c : spec3.target_sets[2]) {
                const int e1 = k6.find_edge(a, b), e2 = k6.find_edge(b, c),
                          e3 = k6.find_edge(a, c);
                const bool rainbow = k6.colour_of(e1) != k6.colour_of(e2) &&
                                     k6.colour_of(e2) != k6.colour_of(e3) &&
                                     k6.colour_of(e1) != k6.colour_of(e3);
                expected += rainbow;
            }
    CHECK(count_rainbow(k6, k3, Anchor::none(), &spec3) == expected);
}

TEST_CASE("estimate_rainbow formulas") {
    const auto k2 = PatternGraph::preset("k2");
    CHECK(estimate_rainbow(100, 0.5, k2, Anchor::Kind::vertex) == doctest::Approx(50.0));

    const auto k3 = PatternGraph::preset("k3");
    CHECK(estimate_rainbow(200, 0.5, k3, Anchor::Kind::vertex) == doctest::Approx(2500.0));
    CHECK(estimate_rainbow(200, 0.5, k3, Anchor::Kind::edge) == doctest::Approx(50.0));
}

TEST_CASE("cost guard") {
    const auto g = generate_kn_proper(501);
    const auto big = PatternGraph::cycle(12);
    CHECK_THROWS_AS(count_rainbow(g, big), CostGuardExceededError);
}

TEST_CASE("enumerate_rainbow_copies lists each copy once") {
    const auto g = generate_kn_proper(8);
    const auto k3 = PatternGraph::preset("k3");
    const auto copies = enumerate_rainbow_copies(g, k3);
    CHECK(static_cast<long long>(copies.size()) == count_rainbow(g, k3));
    std::set<std::vector<int>> unique(copies.begin(), copies.end());
    CHECK(unique.size() == copies.size());
    for (const auto& copy : copies) {
        CHECK(copy.size() == 3);
        std::set<int> cols;
        for (int id : copy) cols.insert(g.colour_of(id));
        CHECK(cols.size() == 3);
    }
}
