#pragma once

#include "subfvs/errors.hpp"
#include "subfvs/graph.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace subfvs {

// Coordinates live on the integer grid [0, 10^6]^2 so that every predicate
// below is exact in 64-bit arithmetic. Touching objects count as
// intersecting (closed sets).

constexpr std::int64_t kCoordMax = 1000000;

struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

struct Segment {
    Point a, b;
};

struct Disk {
    Point center;
    std::int64_t radius = 1;
};

inline int orient(const Point& a, const Point& b, const Point& c) {
    const std::int64_t v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return v > 0 ? 1 : v < 0 ? -1 : 0;
}

inline bool on_segment(const Point& a, const Point& b, const Point& p) {
    return orient(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

inline bool segments_intersect(const Segment& s, const Segment& t) {
    const int d1 = orient(t.a, t.b, s.a);
    const int d2 = orient(t.a, t.b, s.b);
    const int d3 = orient(s.a, s.b, t.a);
    const int d4 = orient(s.a, s.b, t.b);
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && on_segment(t.a, t.b, s.a)) return true;
    if (d2 == 0 && on_segment(t.a, t.b, s.b)) return true;
    if (d3 == 0 && on_segment(s.a, s.b, t.a)) return true;
    if (d4 == 0 && on_segment(s.a, s.b, t.b)) return true;
    return false;
}

inline bool disks_intersect(const Disk& a, const Disk& b) {
    const std::int64_t dx = a.center.x - b.center.x;
    const std::int64_t dy = a.center.y - b.center.y;
    const std::int64_t rr = a.radius + b.radius;
    return dx * dx + dy * dy <= rr * rr;
}

inline void validate_segment(const Segment& s) {
    if (s.a == s.b) throw input_error("segment with identical endpoints");
}

/// Intersection graph of segments; vertex i is the i-th segment.
inline Graph segment_intersection_graph(const std::vector<Segment>& segs) {
    Graph g;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        validate_segment(segs[i]);
        g.add_vertex(static_cast<VertexId>(i));
    }
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            if (segments_intersect(segs[i], segs[j]))
                g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return g;
}

/// Intersection graph of disks; vertex i is the i-th disk.
inline Graph disk_intersection_graph(const std::vector<Disk>& disks) {
    Graph g;
    for (std::size_t i = 0; i < disks.size(); ++i) {
        if (disks[i].radius <= 0) throw input_error("disk with non-positive radius");
        g.add_vertex(static_cast<VertexId>(i));
    }
    for (std::size_t i = 0; i < disks.size(); ++i)
        for (std::size_t j = i + 1; j < disks.size(); ++j)
            if (disks_intersect(disks[i], disks[j]))
                g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return g;
}

// --------------------------------------------------------------------------
// Geometry files: one object per line, `S x1 y1 x2 y2` or `D cx cy r`,
// `#` starts a comment. Vertex ids are implicit, 0-indexed by line order.
// A single file carries one object kind.
// --------------------------------------------------------------------------

struct GeometryFile {
    std::vector<Segment> segments;
    std::vector<Disk> disks;

    Graph graph() const {
        if (!segments.empty() && !disks.empty())
            throw input_error("geometry file mixes segments and disks");
        return disks.empty() ? segment_intersection_graph(segments) : disk_intersection_graph(disks);
    }
};

inline GeometryFile parse_geometry(std::istream& in) {
    GeometryFile gf;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        const std::string where = " at line " + std::to_string(lineno);
        if (tag == "S") {
            Segment s;
            if (!(ls >> s.a.x >> s.a.y >> s.b.x >> s.b.y))
                throw input_error("malformed segment" + where);
            validate_segment(s);
            gf.segments.push_back(s);
        } else if (tag == "D") {
            Disk d;
            if (!(ls >> d.center.x >> d.center.y >> d.radius))
                throw input_error("malformed disk" + where);
            if (d.radius <= 0) throw input_error("non-positive disk radius" + where);
            gf.disks.push_back(d);
        } else {
            throw input_error("unknown geometry tag '" + tag + "'" + where);
        }
    }
    return gf;
}

inline void write_geometry(std::ostream& out, const GeometryFile& gf) {
    for (const Segment& s : gf.segments)
        out << "S " << s.a.x << ' ' << s.a.y << ' ' << s.b.x << ' ' << s.b.y << '\n';
    for (const Disk& d : gf.disks)
        out << "D " << d.center.x << ' ' << d.center.y << ' ' << d.radius << '\n';
}

} // namespace subfvs
