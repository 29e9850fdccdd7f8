#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subfvs/gen.hpp"
#include "subfvs/oracle.hpp"
#include "test_util.hpp"

using namespace subfvs;
using namespace subfvs::testing;

TEST_CASE("annotated brute force on small shapes") {
    Instance c5;
    c5.g = make_cycle(5);
    c5.k = 1;
    auto s = brute_force_annotated(c5);
    REQUIRE(s.has_value());
    CHECK(s->size() == 1);

    Instance k4;
    k4.g = make_clique(4);
    k4.k = 1;
    CHECK_FALSE(brute_force_annotated(k4).has_value());

    Instance forced;
    forced.g = make_cycle(4);
    forced.k = 1;
    forced.modulator = {1};
    forced.must_hit = {{1}};
    auto f = brute_force_annotated(forced);
    REQUIRE(f.has_value());
    CHECK(*f == VertexSet{1});
}

TEST_CASE("size guard refuses large inputs") {
    Instance big;
    big.g = make_path(21);
    big.k = 0;
    CHECK_THROWS_AS(brute_force_annotated(big), input_error);
}

TEST_CASE("reference solver trivial cases") {
    CHECK(reference_min_fvs(make_path(6)).empty());

    // two triangles sharing vertex 0
    Graph g = make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
    const auto s = reference_exact_fvs(g, 1);
    REQUIRE(s.has_value());
    CHECK(*s == VertexSet{0});
}

TEST_CASE("reference solver matches brute force on a 4x4 grid") {
    Graph grid;
    for (VertexId v = 0; v < 16; ++v) grid.add_vertex(v);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            const VertexId v = static_cast<VertexId>(4 * r + c);
            if (c + 1 < 4) grid.add_edge(v, v + 1);
            if (r + 1 < 4) grid.add_edge(v, v + 4);
        }
    CHECK(reference_min_fvs(grid).size() == brute_force_min_fvs(grid).size());
}

TEST_CASE("reference solver matches brute force on random graphs") {
    Rng rng(42);
    for (int iter = 0; iter < 120; ++iter) {
        const Graph g = gen_er(8 + rand_below(rng, 7), 1000 + iter, 0.1 + 0.05 * rand_below(rng, 8));
        const auto opt = brute_force_min_fvs(g).size();
        const auto ref = reference_min_fvs(g);
        CHECK(ref.size() == opt);
        CHECK(is_fvs(g, ref));
        CHECK_FALSE(reference_exact_fvs(g, static_cast<int>(opt) - 1).has_value());
    }
}

TEST_CASE("annotated brute force is a minimum over feasible sets") {
    Rng rng(77);
    for (int iter = 0; iter < 60; ++iter) {
        Instance inst;
        inst.g = gen_er(10, 2000 + iter, 0.25);
        inst.modulator = greedy_modulator(inst.g);
        inst.k = 4;
        inst.must_hit = random_must_hit(rng, inst.g, inst.modulator, 2);
        if (inst.must_hit.size() > static_cast<std::size_t>(inst.k)) continue;
        validate_instance(inst);
        const auto s = brute_force_annotated(inst);
        if (!s) continue;
        CHECK(is_fvs(inst.g, *s));
        for (const auto& h : inst.must_hit) CHECK_FALSE(set_intersect(*s, h).empty());
        if (!s->empty()) {
            // no feasible set of size |s|-1: spot check by resampling
            Instance smaller = inst;
            smaller.k = static_cast<int>(s->size()) - 1;
            CHECK_FALSE(brute_force_annotated(smaller).has_value());
        }
    }
}
