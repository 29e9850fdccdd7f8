#pragma once

#include "subfvs/geometry.hpp"
#include "subfvs/graph.hpp"
#include "subfvs/rng.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace subfvs {

enum class GenKind { Er, Segment, TwoDir, UnitDisk, Disk };

inline GenKind parse_gen_kind(const std::string& s) {
    if (s == "er") return GenKind::Er;
    if (s == "segment") return GenKind::Segment;
    if (s == "2dir") return GenKind::TwoDir;
    if (s == "unit-disk") return GenKind::UnitDisk;
    if (s == "disk") return GenKind::Disk;
    throw input_error("unknown instance kind '" + s + "'");
}

inline std::string gen_kind_name(GenKind k) {
    switch (k) {
        case GenKind::Er: return "er";
        case GenKind::Segment: return "segment";
        case GenKind::TwoDir: return "2dir";
        case GenKind::UnitDisk: return "unit-disk";
        case GenKind::Disk: return "disk";
    }
    return "?";
}

struct GenParams {
    double edge_prob = 0.25; // er only
    double avg_degree = 3.0; // geometric kinds: object sizes target this
};

struct GeneratedInstance {
    Graph g;
    std::optional<GeometryFile> geometry;
};

inline Graph gen_er(std::size_t n, std::uint64_t seed, double p) {
    Rng rng(seed);
    Graph g;
    for (std::size_t v = 0; v < n; ++v) g.add_vertex(static_cast<VertexId>(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rand_chance(rng, p)) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return g;
}

namespace detail {

constexpr std::int64_t kWindow = 1000000;

inline std::int64_t clamp_coord(std::int64_t x) {
    return std::max<std::int64_t>(0, std::min(kCoordMax, x));
}

// random segment of roughly the given length anchored in the window
inline Segment random_segment(Rng& rng, std::int64_t len, bool axis_parallel) {
    Segment s;
    s.a.x = rand_range(rng, 0, kWindow);
    s.a.y = rand_range(rng, 0, kWindow);
    const std::int64_t l = std::max<std::int64_t>(1, len / 2 + rand_range(rng, 0, len));
    if (axis_parallel) {
        const bool horizontal = rand_below(rng, 2) == 0;
        const bool flip = rand_below(rng, 2) == 0;
        const std::int64_t d = flip ? -l : l;
        s.b = s.a;
        if (horizontal)
            s.b.x = clamp_coord(s.a.x + d);
        else
            s.b.y = clamp_coord(s.a.y + d);
        if (s.b == s.a) s.b.x = clamp_coord(s.a.x + 1);
    } else {
        const std::int64_t dx = rand_range(rng, -l, l);
        std::int64_t dy = rand_range(rng, -l, l);
        if (dx == 0 && dy == 0) dy = 1;
        s.b.x = clamp_coord(s.a.x + dx);
        s.b.y = clamp_coord(s.a.y + dy);
        if (s.b == s.a) s.b.y = clamp_coord(s.a.y + 1);
    }
    return s;
}

} // namespace detail

inline std::vector<Segment> gen_segments(std::size_t n, std::uint64_t seed, bool axis_parallel,
                                         double avg_degree = 3.0) {
    Rng rng(seed);
    // expected crossings per pair scale with (len/window)^2
    const double frac = std::sqrt(avg_degree / (0.4 * std::max<double>(1.0, static_cast<double>(n))));
    const auto len = static_cast<std::int64_t>(std::min(1.0, frac) * detail::kWindow);
    std::vector<Segment> segs;
    segs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        segs.push_back(detail::random_segment(rng, std::max<std::int64_t>(1, len), axis_parallel));
    return segs;
}

inline std::vector<Disk> gen_disks(std::size_t n, std::uint64_t seed, bool unit,
                                   double avg_degree = 3.0) {
    Rng rng(seed);
    const double frac =
        std::sqrt(avg_degree / (12.6 * std::max<double>(1.0, static_cast<double>(n))));
    const auto base = static_cast<std::int64_t>(std::min(0.5, frac) * detail::kWindow);
    const std::int64_t r0 = std::max<std::int64_t>(1, base);
    std::vector<Disk> disks;
    disks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Disk d;
        d.center.x = rand_range(rng, 0, detail::kWindow);
        d.center.y = rand_range(rng, 0, detail::kWindow);
        d.radius = unit ? r0 : std::max<std::int64_t>(1, r0 / 2 + rand_range(rng, 0, r0));
        disks.push_back(d);
    }
    return disks;
}

/// Deterministic instance supply: same (kind, n, seed, params) gives a
/// byte-identical graph. Geometry is retained for the geometric kinds.
inline GeneratedInstance gen_instance(GenKind kind, std::size_t n, std::uint64_t seed,
                                      const GenParams& params = {}) {
    GeneratedInstance out;
    switch (kind) {
        case GenKind::Er:
            out.g = gen_er(n, seed, params.edge_prob);
            break;
        case GenKind::Segment: {
            GeometryFile gf;
            gf.segments = gen_segments(n, seed, false, params.avg_degree);
            out.g = segment_intersection_graph(gf.segments);
            out.geometry = std::move(gf);
            break;
        }
        case GenKind::TwoDir: {
            GeometryFile gf;
            gf.segments = gen_segments(n, seed, true, params.avg_degree);
            out.g = segment_intersection_graph(gf.segments);
            out.geometry = std::move(gf);
            break;
        }
        case GenKind::UnitDisk:
        case GenKind::Disk: {
            GeometryFile gf;
            gf.disks = gen_disks(n, seed, kind == GenKind::UnitDisk, params.avg_degree);
            out.g = disk_intersection_graph(gf.disks);
            out.geometry = std::move(gf);
            break;
        }
    }
    return out;
}

/// Abstract graph of the outerstring family witnessing exponential
/// neighborhood complexity: a clique A of size r plus 2^r extra vertices,
/// one per subset of A, each adjacent exactly to its subset.
inline std::pair<Graph, VertexSet> gen_outerstring_counterexample(int r) {
    if (r < 1 || r > 12) throw input_error("outerstring construction limited to 1 <= r <= 12");
    Graph g;
    VertexSet a;
    for (int i = 0; i < r; ++i) {
        g.add_vertex(static_cast<VertexId>(i));
        a.insert(static_cast<VertexId>(i));
        for (int j = 0; j < i; ++j) g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    }
    const std::uint32_t subsets = 1u << r;
    for (std::uint32_t s = 0; s < subsets; ++s) {
        const VertexId v = static_cast<VertexId>(r) + static_cast<VertexId>(s);
        g.add_vertex(v);
        for (int i = 0; i < r; ++i)
            if (s >> i & 1u) g.add_edge(v, static_cast<VertexId>(i));
    }
    return {g, a};
}

/// Number of distinct traces N(v) ∩ A over all vertices v.
inline std::uint64_t neighborhood_complexity(const Graph& g, const VertexSet& a) {
    for (VertexId v : a)
        if (!g.has_vertex(v)) throw input_error("neighborhood_complexity: unknown vertex in A");
    std::set<std::vector<VertexId>> traces;
    for (VertexId v : g.vertices()) {
        std::vector<VertexId> trace;
        for (VertexId u : g.neighbors(v))
            if (a.count(u)) trace.push_back(u);
        traces.insert(std::move(trace));
    }
    return traces.size();
}

} // namespace subfvs
