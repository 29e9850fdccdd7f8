#pragma once

#include "subfvs/graph.hpp"

#include <map>
#include <vector>

namespace subfvs {

/// Annotated instance: graph, deletion budget, a modulator M whose removal
/// leaves a forest, and a packing of connected must-hit subsets of M.
struct Instance {
    Graph g;
    int k = 0;
    VertexSet modulator;
    std::vector<VertexSet> must_hit;

    VertexSet forest_vertices() const {
        VertexSet f;
        for (VertexId v : g.vertices())
            if (!modulator.count(v)) f.insert(v);
        return f;
    }
    Graph forest() const { return induced_subgraph(g, forest_vertices()); }
};

inline void validate_instance(const Instance& inst) {
    if (inst.k < 0) throw invariant_error("instance: negative budget");
    for (VertexId v : inst.modulator)
        if (!inst.g.has_vertex(v)) throw invariant_error("instance: modulator vertex not in graph");
    if (!is_forest(inst.forest())) throw invariant_error("instance: modulator is not a feedback vertex set");
    if (inst.must_hit.size() > static_cast<std::size_t>(inst.k))
        throw invariant_error("instance: must-hit packing larger than budget");
    VertexSet seen;
    for (const VertexSet& h : inst.must_hit) {
        if (h.empty()) throw invariant_error("instance: empty must-hit set");
        for (VertexId v : h) {
            if (!inst.modulator.count(v)) throw invariant_error("instance: must-hit set leaves modulator");
            if (!seen.insert(v).second) throw invariant_error("instance: must-hit sets overlap");
        }
        if (!is_connected_subset(inst.g, h)) throw invariant_error("instance: must-hit set not connected");
    }
}

/// Rooting of the forest G - M. Roots are the smallest ids per component so
/// that every later tie-break is reproducible.
struct RootedForest {
    std::vector<VertexId> roots;
    std::map<VertexId, VertexId> parent; // roots map to themselves
    std::map<VertexId, std::vector<VertexId>> children;
    std::map<VertexId, int> depth;

    bool is_root(VertexId v) const { return parent.at(v) == v; }
};

inline RootedForest root_forest(const Instance& inst) {
    const Graph f = inst.forest();
    if (!is_forest(f)) throw invariant_error("root_forest: modulator is not a feedback vertex set");
    RootedForest rf;
    for (const auto& comp : components(f)) {
        const VertexId root = comp.front(); // components are sorted
        rf.roots.push_back(root);
        rf.parent[root] = root;
        rf.depth[root] = 0;
        std::vector<VertexId> queue{root};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const VertexId x = queue[i];
            rf.children[x]; // ensure entry
            for (VertexId y : f.neighbors(x)) {
                if (rf.parent.count(y)) continue;
                rf.parent[y] = x;
                rf.depth[y] = rf.depth[x] + 1;
                rf.children[x].push_back(y);
                queue.push_back(y);
            }
        }
    }
    return rf;
}

/// Modulator-degree and border of a subtree T of G - M:
///  m_deg  = number of modulator vertices with a neighbor in T,
///  border = number of vertices of T with a neighbor outside M and T.
struct SubtreeMeasure {
    int m_deg = 0;
    int border = 0;
    int db() const { return m_deg > border ? m_deg : border; }
};

inline VertexSet modulator_neighbors(const Instance& inst, const VertexSet& tree) {
    VertexSet out;
    for (VertexId v : tree)
        for (VertexId u : inst.g.neighbors(v))
            if (inst.modulator.count(u)) out.insert(u);
    return out;
}

inline VertexSet border_vertices(const Instance& inst, const VertexSet& tree) {
    VertexSet out;
    for (VertexId v : tree) {
        for (VertexId u : inst.g.neighbors(v)) {
            if (!inst.modulator.count(u) && !tree.count(u)) {
                out.insert(v);
                break;
            }
        }
    }
    return out;
}

inline void require_subtree(const Instance& inst, const VertexSet& tree) {
    if (tree.empty()) throw input_error("subtree measure: empty vertex set");
    std::size_t inner_edges = 0;
    for (VertexId v : tree) {
        if (!inst.g.has_vertex(v)) throw input_error("subtree measure: unknown vertex");
        if (inst.modulator.count(v)) throw input_error("subtree measure: vertex inside modulator");
        for (VertexId u : inst.g.neighbors(v))
            if (u > v && tree.count(u)) ++inner_edges;
    }
    if (inner_edges + 1 != tree.size() || !is_connected_subset(inst.g, tree))
        throw input_error("subtree measure: set does not induce a tree");
}

inline SubtreeMeasure measure_subtree(const Instance& inst, const VertexSet& tree) {
    require_subtree(inst, tree);
    SubtreeMeasure m;
    m.m_deg = static_cast<int>(modulator_neighbors(inst, tree).size());
    m.border = static_cast<int>(border_vertices(inst, tree).size());
    return m;
}

/// True iff every modulator vertex has at most one neighbor in the tree,
/// i.e. the tree closes no cycle with any single modulator vertex.
inline bool is_weakly_connected(const Instance& inst, const VertexSet& tree) {
    std::map<VertexId, int> hits;
    for (VertexId v : tree)
        for (VertexId u : inst.g.neighbors(v))
            if (inst.modulator.count(u) && ++hits[u] >= 2) return false;
    return true;
}

namespace detail {

// Vertices of `live` reachable from v going only downward in rf.
inline VertexSet downward_subtree(const RootedForest& rf, const VertexSet& live, VertexId v) {
    VertexSet out;
    std::vector<VertexId> stack{v};
    while (!stack.empty()) {
        VertexId x = stack.back();
        stack.pop_back();
        if (!out.insert(x).second) continue;
        auto it = rf.children.find(x);
        if (it == rf.children.end()) continue;
        for (VertexId c : it->second)
            if (live.count(c)) stack.push_back(c);
    }
    return out;
}

} // namespace detail

/// Peels a rooted subtree into sharp parts plus at most one weakly
/// connected remainder. At each step the deepest vertex (smallest id on
/// ties) whose remaining downward subtree is not weakly connected is
/// located; that subtree is sharp by choice of the vertex, is emitted, and
/// is removed. The returned parts tile the input tree.
inline std::vector<VertexSet> sharp_decompose(const Instance& inst, const VertexSet& tree) {
    require_subtree(inst, tree);
    const RootedForest rf = root_forest(inst);
    VertexSet remaining = tree;
    std::vector<VertexSet> parts;
    while (!remaining.empty()) {
        bool found = false;
        VertexId best = 0;
        int best_depth = -1;
        for (VertexId v : remaining) {
            const int d = rf.depth.at(v);
            if (d <= best_depth) continue;
            if (!is_weakly_connected(inst, detail::downward_subtree(rf, remaining, v))) {
                best = v;
                best_depth = d;
                found = true;
            }
        }
        if (!found) {
            parts.push_back(remaining);
            break;
        }
        VertexSet part = detail::downward_subtree(rf, remaining, best);
        remaining = set_minus(remaining, part);
        parts.push_back(std::move(part));
    }
    return parts;
}

} // namespace subfvs
