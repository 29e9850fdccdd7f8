#pragma once

#include "subfvs/ann.hpp"
#include "subfvs/graph.hpp"
#include "subfvs/rng.hpp"

#include <initializer_list>
#include <vector>

namespace subfvs::testing {

inline Graph make_graph(std::size_t n, std::initializer_list<std::pair<VertexId, VertexId>> edges) {
    Graph g;
    for (std::size_t v = 0; v < n; ++v) g.add_vertex(static_cast<VertexId>(v));
    for (const auto& [u, v] : edges) g.add_edge(u, v);
    return g;
}

inline Graph make_path(std::size_t n) {
    Graph g;
    for (std::size_t v = 0; v < n; ++v) g.add_vertex(static_cast<VertexId>(v));
    for (std::size_t v = 1; v < n; ++v)
        g.add_edge(static_cast<VertexId>(v - 1), static_cast<VertexId>(v));
    return g;
}

inline Graph make_cycle(std::size_t n) {
    Graph g = make_path(n);
    g.add_edge(static_cast<VertexId>(n - 1), 0);
    return g;
}

inline Graph make_clique(std::size_t n) {
    Graph g;
    for (std::size_t v = 0; v < n; ++v) g.add_vertex(static_cast<VertexId>(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
    return g;
}

inline Graph make_biclique(std::size_t a, std::size_t b) {
    Graph g;
    for (std::size_t v = 0; v < a + b; ++v) g.add_vertex(static_cast<VertexId>(v));
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j)
            g.add_edge(static_cast<VertexId>(i), static_cast<VertexId>(a + j));
    return g;
}

/// Random graph plus a FVS modulator computed by greedy peeling; useful to
/// build valid random instances without touching the solver modules.
inline VertexSet greedy_modulator(const Graph& g) {
    Graph h = g;
    VertexSet m;
    while (has_cycle(h)) {
        VertexId pick = 0;
        std::size_t dmax = 0;
        for (VertexId v : h.vertices())
            if (h.degree(v) > dmax) {
                dmax = h.degree(v);
                pick = v;
            }
        m.insert(pick);
        h.remove_vertex(pick);
    }
    return m;
}

/// Random connected-in-G disjoint subsets of the modulator, for must-hit
/// packings in annotated tests.
inline std::vector<VertexSet> random_must_hit(Rng& rng, const Graph& g, const VertexSet& modulator,
                                              std::size_t max_sets) {
    std::vector<VertexSet> hs;
    VertexSet used;
    std::vector<VertexId> mod(modulator.begin(), modulator.end());
    for (std::size_t attempt = 0; attempt < 3 * max_sets && hs.size() < max_sets; ++attempt) {
        if (mod.empty()) break;
        const VertexId seed = mod[rand_below(rng, mod.size())];
        if (used.count(seed)) continue;
        VertexSet h{seed};
        const std::size_t want = 1 + rand_below(rng, 2);
        while (h.size() < want) {
            std::vector<VertexId> growth;
            for (VertexId v : h)
                for (VertexId u : g.neighbors(v))
                    if (modulator.count(u) && !used.count(u) && !h.count(u)) growth.push_back(u);
            if (growth.empty()) break;
            h.insert(growth[rand_below(rng, growth.size())]);
        }
        for (VertexId v : h) used.insert(v);
        hs.push_back(std::move(h));
    }
    return hs;
}

} // namespace subfvs::testing
