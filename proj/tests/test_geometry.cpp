#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subfvs/geometry.hpp"
#include "subfvs/rng.hpp"

#include <sstream>

using namespace subfvs;

namespace {

// Independent intersection test used as the oracle: solves the parametric
// system A + s(B-A) = C + t(D-C) with exact 128-bit fractions, falling back
// to projection interval checks for the collinear case.
bool segments_intersect_oracle(const Segment& s1, const Segment& s2) {
    using I = __int128;
    const I ax = s1.a.x, ay = s1.a.y, bx = s1.b.x, by = s1.b.y;
    const I cx = s2.a.x, cy = s2.a.y, dx = s2.b.x, dy = s2.b.y;
    const I rx = bx - ax, ry = by - ay;
    const I qx = dx - cx, qy = dy - cy;
    const I denom = rx * qy - ry * qx;
    const I diffx = cx - ax, diffy = cy - ay;
    const I cross1 = diffx * qy - diffy * qx; // s * denom
    const I cross2 = diffx * ry - diffy * rx; // t * denom
    if (denom != 0) {
        // intersection at s = cross1/denom, t = cross2/denom, both in [0,1]
        auto in01 = [&](I num) {
            if (denom > 0) return num >= 0 && num <= denom;
            return num <= 0 && num >= denom;
        };
        return in01(cross1) && in01(cross2);
    }
    if (cross1 != 0 || cross2 != 0) return false; // parallel, not collinear
    // collinear: overlap of projections on the dominant axis
    auto overlap = [](I a1, I a2, I b1, I b2) {
        if (a1 > a2) std::swap(a1, a2);
        if (b1 > b2) std::swap(b1, b2);
        return std::max(a1, b1) <= std::min(a2, b2);
    };
    if (rx != 0 || qx != 0) return overlap(ax, bx, cx, dx) && overlap(ay, by, cy, dy);
    return overlap(ay, by, cy, dy);
}

Segment rand_seg(Rng& rng, std::int64_t lo, std::int64_t hi) {
    Segment s;
    do {
        s.a.x = rand_range(rng, lo, hi);
        s.a.y = rand_range(rng, lo, hi);
        s.b.x = rand_range(rng, lo, hi);
        s.b.y = rand_range(rng, lo, hi);
    } while (s.a == s.b);
    return s;
}

} // namespace

TEST_CASE("segment predicate basics") {
    const Segment d1{{0, 0}, {10, 10}};
    const Segment d2{{0, 10}, {10, 0}};
    CHECK(segments_intersect(d1, d2));
    CHECK(segment_intersection_graph({d1, d2}).edge_count() == 1);

    std::vector<Segment> parallel;
    for (int i = 0; i < 5; ++i)
        parallel.push_back({{0, 10 * i}, {100, 10 * i}});
    CHECK(segment_intersection_graph(parallel).edge_count() == 0);

    // touching endpoints count
    CHECK(segments_intersect({{0, 0}, {5, 5}}, {{5, 5}, {9, 0}}));
    // collinear overlap counts
    CHECK(segments_intersect({{0, 0}, {10, 0}}, {{5, 0}, {20, 0}}));
    CHECK_FALSE(segments_intersect({{0, 0}, {10, 0}}, {{11, 0}, {20, 0}}));
}

TEST_CASE("segment predicate agrees with the rational oracle") {
    Rng rng(31);
    int positives = 0;
    for (int iter = 0; iter < 4000; ++iter) {
        // tiny coordinate window so degenerate configurations actually appear
        const std::int64_t hi = iter % 2 == 0 ? 6 : 1000;
        const Segment s1 = rand_seg(rng, 0, hi);
        const Segment s2 = rand_seg(rng, 0, hi);
        const bool fast = segments_intersect(s1, s2);
        const bool slow = segments_intersect_oracle(s1, s2);
        CHECK(fast == slow);
        positives += fast ? 1 : 0;
    }
    CHECK(positives > 200); // the sample actually exercises both outcomes
}

TEST_CASE("disk predicate basics and exactness") {
    CHECK_FALSE(disks_intersect({{0, 0}, 1}, {{3, 0}, 1}));
    CHECK(disks_intersect({{0, 0}, 1}, {{2, 0}, 1})); // touching
    CHECK(disks_intersect({{5, 5}, 3}, {{5, 5}, 1})); // concentric

    Rng rng(32);
    for (int iter = 0; iter < 2000; ++iter) {
        Disk a{{rand_range(rng, 0, 50), rand_range(rng, 0, 50)}, rand_range(rng, 1, 20)};
        Disk b{{rand_range(rng, 0, 50), rand_range(rng, 0, 50)}, rand_range(rng, 1, 20)};
        const std::int64_t dx = a.center.x - b.center.x;
        const std::int64_t dy = a.center.y - b.center.y;
        const __int128 lhs = static_cast<__int128>(dx) * dx + static_cast<__int128>(dy) * dy;
        const __int128 rhs = static_cast<__int128>(a.radius + b.radius) * (a.radius + b.radius);
        CHECK(disks_intersect(a, b) == (lhs <= rhs));
    }
}

TEST_CASE("geometry file round trip") {
    GeometryFile gf;
    gf.segments = {{{0, 0}, {4, 4}}, {{1, 0}, {1, 9}}};
    std::ostringstream out;
    write_geometry(out, gf);
    std::istringstream in(out.str());
    const GeometryFile back = parse_geometry(in);
    REQUIRE(back.segments.size() == 2);
    CHECK(back.segments[1].b.y == 9);
    CHECK(back.graph().order() == 2);

    std::istringstream bad("S 1 2 3\n");
    CHECK_THROWS_AS(parse_geometry(bad), input_error);
    std::istringstream mixed("S 0 0 1 1\nD 0 0 1\n");
    CHECK_THROWS_AS(parse_geometry(mixed).graph(), input_error);
    std::istringstream commented("# header\nD 0 0 2 # a disk\n");
    CHECK(parse_geometry(commented).disks.size() == 1);
}
