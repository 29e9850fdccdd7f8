#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subfvs/graph.hpp"
#include "subfvs/oracle.hpp"
#include "subfvs/rng.hpp"
#include "test_util.hpp"

using namespace subfvs;
using namespace subfvs::testing;

TEST_CASE("induced subgraph basics") {
    const Graph k3 = make_clique(3);
    CHECK(induced_subgraph(k3, {0, 1, 2}).edge_count() == 3);
    const Graph e = induced_subgraph(k3, {0, 2});
    CHECK(e.order() == 2);
    CHECK(e.edge_count() == 1);
    CHECK(e.has_edge(0, 2));
    CHECK_THROWS_AS(induced_subgraph(k3, {0, 7}), input_error);
}

TEST_CASE("induced subgraph equals brute-force edge filter") {
    Rng rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        Graph g;
        const std::size_t n = 12;
        for (std::size_t v = 0; v < n; ++v) g.add_vertex(static_cast<VertexId>(v));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rand_chance(rng, 0.3)) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
        VertexSet s;
        for (std::size_t v = 0; v < n; ++v)
            if (rand_chance(rng, 0.5)) s.insert(static_cast<VertexId>(v));
        const Graph h = induced_subgraph(g, s);
        std::size_t expected = 0;
        for (const auto& [u, v] : g.edges())
            if (s.count(u) && s.count(v)) ++expected;
        CHECK(h.edge_count() == expected);
        for (const auto& [u, v] : h.edges()) CHECK(g.has_edge(u, v));
        validate_graph(h);
    }
}

TEST_CASE("degree-2 contraction on a path") {
    // path a(0) - u(1) - v(2) - b(3)
    const Graph p4 = make_path(4);
    auto [g, w] = contract_degree2_edge(p4, 1, 2);
    CHECK(w == 1);
    CHECK(g.order() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 3));
    validate_graph(g);
}

TEST_CASE("degree-2 contraction of consecutive C5 vertices gives C4") {
    const Graph c5 = make_cycle(5);
    auto [g, w] = contract_degree2_edge(c5, 1, 2);
    CHECK(g.order() == 4);
    CHECK(g.edge_count() == 4);
    CHECK(has_cycle(g));
    CHECK(w == 1);
}

TEST_CASE("contraction rejects precondition violations") {
    const Graph k3 = make_clique(3);
    CHECK_THROWS_AS(contract_degree2_edge(k3, 0, 1), rule_error); // common neighbor
    Graph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK_THROWS_AS(contract_degree2_edge(star, 0, 1), rule_error); // degrees
    CHECK_THROWS_AS(contract_degree2_edge(make_path(3), 0, 2), rule_error); // not an edge
}

TEST_CASE("contraction preserves the optimum and can be undone") {
    Rng rng(101);
    int exercised = 0;
    for (int iter = 0; iter < 120 && exercised < 25; ++iter) {
        Graph g;
        const std::size_t n = 10;
        for (std::size_t v = 0; v < n; ++v) g.add_vertex(static_cast<VertexId>(v));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rand_chance(rng, 0.22)) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
        // find a qualifying edge
        bool found = false;
        VertexId u = 0, v = 0;
        for (const auto& [a, b] : g.edges()) {
            if (g.degree(a) != 2 || g.degree(b) != 2) continue;
            bool triangle = false;
            for (VertexId x : g.neighbors(a))
                if (x != b && g.has_edge(b, x)) triangle = true;
            if (!triangle) {
                u = a;
                v = b;
                found = true;
                break;
            }
        }
        if (!found) continue;
        ++exercised;
        auto [h, w] = contract_degree2_edge(g, u, v);
        (void)w;
        CHECK(brute_force_min_fvs(g).size() == brute_force_min_fvs(h).size());

        const Graph back = expand_last_contraction(h);
        CHECK(back.order() == g.order());
        CHECK(back.edges() == g.edges());
    }
    CHECK(exercised >= 10);
}

TEST_CASE("cycle detection") {
    CHECK_FALSE(has_cycle(make_path(7)));
    const auto witness = find_cycle(make_cycle(3));
    REQUIRE(witness.has_value());
    CHECK(witness->size() == 3);

    Graph tree = make_graph(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    CHECK_FALSE(has_cycle(tree));
}

TEST_CASE("cycle detection agrees with component counting on random graphs") {
    Rng rng(5);
    for (int iter = 0; iter < 60; ++iter) {
        Graph g;
        const std::size_t n = 15;
        for (std::size_t v = 0; v < n; ++v) g.add_vertex(static_cast<VertexId>(v));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rand_chance(rng, 0.12)) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
        const bool cyc = has_cycle(g);
        const bool by_count = g.edge_count() >= g.order() - components(g).size() + 1;
        CHECK(cyc == by_count);
        if (cyc) {
            const auto w = find_cycle(g);
            REQUIRE(w.has_value());
            REQUIRE(w->size() >= 3);
            for (std::size_t i = 0; i < w->size(); ++i)
                CHECK(g.has_edge((*w)[i], (*w)[(i + 1) % w->size()]));
        }
    }
}

TEST_CASE("mutation sequences keep the structure valid") {
    Rng rng(9);
    Graph g = make_cycle(12);
    for (int step = 0; step < 8; ++step) {
        const auto vs = g.vertices();
        if (vs.size() <= 4) break;
        if (rand_chance(rng, 0.5)) {
            g = without_vertex(g, vs[rand_below(rng, vs.size())]);
        } else {
            bool done = false;
            for (const auto& [a, b] : g.edges()) {
                if (g.degree(a) == 2 && g.degree(b) == 2) {
                    bool triangle = false;
                    for (VertexId x : g.neighbors(a))
                        if (x != b && g.has_edge(b, x)) triangle = true;
                    if (triangle) continue;
                    g = contract_degree2_edge(g, a, b).first;
                    done = true;
                    break;
                }
            }
            if (!done) g = without_vertex(g, vs[0]);
        }
        validate_graph(g);
    }
}
