#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subfvs/gen.hpp"

using namespace subfvs;

TEST_CASE("er generator endpoints") {
    const Graph empty = gen_er(10, 1, 0.0);
    CHECK(empty.order() == 10);
    CHECK(empty.edge_count() == 0);
    const Graph full = gen_er(10, 1, 1.0);
    CHECK(full.edge_count() == 45);
}

TEST_CASE("generators are deterministic in their arguments") {
    for (GenKind kind : {GenKind::Er, GenKind::Segment, GenKind::TwoDir, GenKind::Disk,
                         GenKind::UnitDisk}) {
        const auto a = gen_instance(kind, 20, 7);
        const auto b = gen_instance(kind, 20, 7);
        CHECK(a.g.edges() == b.g.edges());
        const auto c = gen_instance(kind, 20, 8);
        CHECK(a.g.order() == c.g.order());
    }
}

TEST_CASE("geometric kinds keep their geometry and match a rebuild") {
    const auto seg = gen_instance(GenKind::Segment, 25, 3);
    REQUIRE(seg.geometry.has_value());
    CHECK(seg.geometry->segments.size() == 25);
    CHECK(seg.g.edges() == segment_intersection_graph(seg.geometry->segments).edges());

    const auto dsk = gen_instance(GenKind::Disk, 25, 3);
    REQUIRE(dsk.geometry.has_value());
    CHECK(dsk.g.edges() == disk_intersection_graph(dsk.geometry->disks).edges());
}

TEST_CASE("generated corpora have workable densities") {
    for (GenKind kind : {GenKind::Segment, GenKind::TwoDir, GenKind::Disk, GenKind::UnitDisk}) {
        std::size_t cyclic = 0;
        double total_deg = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto inst = gen_instance(kind, 14, 100 + seed);
            total_deg += 2.0 * inst.g.edge_count() / 14.0;
            if (has_cycle(inst.g)) ++cyclic;
        }
        INFO(gen_kind_name(kind) << " avg degree " << total_deg / 20.0);
        CHECK(cyclic >= 10);             // enough nontrivial instances
        CHECK(total_deg / 20.0 > 1.0);   // not degenerate
        CHECK(total_deg / 20.0 < 9.0);   // not nearly complete
    }
}

TEST_CASE("outerstring construction has exponential neighborhood complexity") {
    const auto [g, a] = gen_outerstring_counterexample(2);
    CHECK(g.order() == 2 + 4);
    // extra vertices realize all subsets of A
    std::set<std::vector<VertexId>> traces;
    for (VertexId v = 2; v < 6; ++v) {
        std::vector<VertexId> t;
        for (VertexId u : g.neighbors(v))
            if (a.count(u)) t.push_back(u);
        traces.insert(t);
    }
    CHECK(traces.size() == 4);
    CHECK(neighborhood_complexity(g, a) == 4);

    for (int r = 3; r <= 8; ++r) {
        const auto [gr, ar] = gen_outerstring_counterexample(r);
        CHECK(neighborhood_complexity(gr, ar) == (1u << r));
    }
    CHECK_THROWS_AS(gen_outerstring_counterexample(13), input_error);
}

TEST_CASE("neighborhood complexity corner cases") {
    const Graph g = gen_er(6, 5, 0.0);
    CHECK(neighborhood_complexity(g, {}) == 1);
    CHECK(neighborhood_complexity(g, {0, 1, 2}) == 1); // edgeless: only the empty trace
}
