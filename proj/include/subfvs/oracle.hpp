#pragma once

#include "subfvs/ann.hpp"
#include "subfvs/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace subfvs {

namespace detail {

struct MaskedGraph {
    std::vector<VertexId> ids;                    // index -> id
    std::vector<std::pair<int, int>> edge_list;   // index pairs
    std::vector<std::uint32_t> hit_masks;         // one mask per must-hit set

    static MaskedGraph build(const Graph& g, const std::vector<VertexSet>& must_hit) {
        MaskedGraph mg;
        mg.ids = g.vertices();
        std::map<VertexId, int> index;
        for (std::size_t i = 0; i < mg.ids.size(); ++i) index[mg.ids[i]] = static_cast<int>(i);
        for (const auto& [u, v] : g.edges()) mg.edge_list.emplace_back(index[u], index[v]);
        for (const VertexSet& h : must_hit) {
            std::uint32_t m = 0;
            for (VertexId v : h) m |= 1u << index.at(v);
            mg.hit_masks.push_back(m);
        }
        return mg;
    }

    // acyclicity of the graph minus the vertices in `removed`
    bool forest_without(std::uint32_t removed) const {
        int uf[32];
        for (std::size_t i = 0; i < ids.size(); ++i) uf[i] = static_cast<int>(i);
        auto find = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        for (const auto& [a, b] : edge_list) {
            if ((removed >> a & 1u) || (removed >> b & 1u)) continue;
            const int ra = find(a), rb = find(b);
            if (ra == rb) return false;
            uf[ra] = rb;
        }
        return true;
    }

    bool hits_all(std::uint32_t mask) const {
        for (std::uint32_t h : hit_masks)
            if ((mask & h) == 0) return false;
        return true;
    }

    VertexSet to_ids(std::uint32_t mask) const {
        VertexSet s;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (mask >> i & 1u) s.insert(ids[i]);
        return s;
    }
};

// next mask with the same popcount (Gosper)
inline std::uint32_t next_same_popcount(std::uint32_t x) {
    const std::uint32_t c = x & -x;
    const std::uint32_t r = x + c;
    return (((r ^ x) >> 2) / c) | r;
}

} // namespace detail

/// Exhaustive minimum annotated solution of size <= k: smallest deletion set
/// leaving the graph acyclic and meeting every must-hit set. Guarded to 20
/// vertices; the first set in (size, mask-value) order is returned.
inline std::optional<VertexSet> brute_force_annotated(const Instance& inst) {
    if (inst.g.order() > 20) throw input_error("brute_force_annotated: more than 20 vertices");
    const auto mg = detail::MaskedGraph::build(inst.g, inst.must_hit);
    const int n = static_cast<int>(mg.ids.size());
    const int kcap = std::min(inst.k, n);
    for (int size = 0; size <= kcap; ++size) {
        if (size == 0) {
            if (mg.forest_without(0) && mg.hits_all(0)) return VertexSet{};
            continue;
        }
        std::uint32_t mask = (1u << size) - 1;
        const std::uint32_t end = n == 32 ? 0xffffffffu : (1u << n);
        while (mask < end) {
            if (mg.hits_all(mask) && mg.forest_without(mask)) return mg.to_ids(mask);
            mask = detail::next_same_popcount(mask);
        }
    }
    return std::nullopt;
}

/// Exhaustive minimum feedback vertex set (no annotations), same guard.
inline VertexSet brute_force_min_fvs(const Graph& g) {
    Instance inst;
    inst.g = g;
    inst.k = static_cast<int>(g.order());
    auto s = brute_force_annotated(inst);
    return *s; // the whole vertex set is always feasible
}

// ---------------------------------------------------------------------------
// Reference exact solver: bounded search tree over a multigraph with the
// classical low-degree reductions. Independent of the main pipeline; used as
// the medium-size oracle.
// ---------------------------------------------------------------------------

namespace detail {

struct MultiGraph {
    // adjacency counts; a loop at v is stored at adj[v][v] (counted once)
    std::map<VertexId, std::map<VertexId, int>> adj;

    static MultiGraph from(const Graph& g) {
        MultiGraph m;
        for (VertexId v : g.vertices()) m.adj[v];
        for (const auto& [u, v] : g.edges()) {
            m.adj[u][v] = 1;
            m.adj[v][u] = 1;
        }
        return m;
    }

    int degree(VertexId v) const {
        int d = 0;
        for (const auto& [u, c] : adj.at(v)) d += (u == v) ? 2 * c : c;
        return d;
    }

    bool has_loop(VertexId v) const {
        auto it = adj.at(v).find(v);
        return it != adj.at(v).end() && it->second > 0;
    }

    void remove(VertexId v) {
        for (const auto& [u, c] : adj.at(v))
            if (u != v) adj.at(u).erase(v);
        adj.erase(v);
    }

    void add_edge(VertexId a, VertexId b) {
        if (a == b) {
            adj[a][a] += 1;
        } else {
            adj[a][b] += 1;
            adj[b][a] += 1;
        }
    }

    // bypass a degree-2 vertex: delete it and join its two edge endpoints
    void bypass(VertexId v) {
        std::vector<VertexId> ends;
        for (const auto& [u, c] : adj.at(v))
            for (int i = 0; i < c; ++i) ends.push_back(u);
        remove(v);
        add_edge(ends[0], ends[1]);
    }
};

inline std::optional<std::vector<VertexId>> multigraph_short_cycle(const MultiGraph& mg) {
    // parallel pair = cycle of length 2
    for (const auto& [v, nbrs] : mg.adj)
        for (const auto& [u, c] : nbrs)
            if (u > v && c >= 2) return std::vector<VertexId>{v, u};
    // BFS from every vertex, first closed cycle wins, shortest kept
    std::optional<std::vector<VertexId>> best;
    for (const auto& [s, nbrs0] : mg.adj) {
        (void)nbrs0;
        std::map<VertexId, VertexId> pred;
        std::vector<VertexId> queue{s};
        pred[s] = s;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const VertexId x = queue[qi];
            for (const auto& [y, c] : mg.adj.at(x)) {
                (void)c;
                if (y == x) continue;
                if (!pred.count(y)) {
                    pred[y] = x;
                    queue.push_back(y);
                } else if (y != pred[x]) {
                    std::vector<VertexId> px{x}, py{y};
                    VertexId cx = x;
                    while (pred[cx] != cx) px.push_back(cx = pred[cx]);
                    VertexId cy = y;
                    while (pred[cy] != cy) py.push_back(cy = pred[cy]);
                    while (px.size() > 1 && py.size() > 1 && px[px.size() - 2] == py[py.size() - 2]) {
                        px.pop_back();
                        py.pop_back();
                    }
                    py.pop_back();
                    for (VertexId w : py) px.push_back(w);
                    std::sort(px.begin(), px.end());
                    px.erase(std::unique(px.begin(), px.end()), px.end());
                    if (!best || px.size() < best->size()) best = px;
                }
            }
            if (best && best->size() == 3) return best;
        }
    }
    return best;
}

inline void reference_search(MultiGraph mg, VertexSet taken, VertexSet& best, bool& have_best) {
    // exhaustive reduction
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [v, nbrs] : mg.adj) {
            (void)nbrs;
            if (mg.has_loop(v)) {
                taken.insert(v);
                mg.remove(v);
                changed = true;
                break;
            }
            const int d = mg.degree(v);
            if (d <= 1) {
                mg.remove(v);
                changed = true;
                break;
            }
            if (d == 2) {
                // two parallel edges to one neighbor: that neighbor dominates
                const auto& n = mg.adj.at(v);
                if (n.size() == 1 && n.begin()->second == 2) {
                    const VertexId a = n.begin()->first;
                    taken.insert(a);
                    mg.remove(a);
                } else {
                    mg.bypass(v);
                }
                changed = true;
                break;
            }
        }
        if (have_best && taken.size() >= best.size()) return;
    }
    if (mg.adj.empty()) {
        if (!have_best || taken.size() < best.size()) {
            best = taken;
            have_best = true;
        }
        return;
    }
    auto cycle = multigraph_short_cycle(mg);
    if (!cycle) { // leftover forest
        if (!have_best || taken.size() < best.size()) {
            best = taken;
            have_best = true;
        }
        return;
    }
    if (have_best && taken.size() + 1 >= best.size()) return;
    std::sort(cycle->begin(), cycle->end(), [&](VertexId a, VertexId b) {
        const int da = mg.degree(a), db = mg.degree(b);
        return da != db ? da > db : a < b;
    });
    for (VertexId v : *cycle) {
        MultiGraph child = mg;
        child.remove(v);
        VertexSet t = taken;
        t.insert(v);
        reference_search(std::move(child), std::move(t), best, have_best);
    }
}

} // namespace detail

/// Minimum feedback vertex set by branch and bound; exact on any input.
inline VertexSet reference_min_fvs(const Graph& g) {
    // greedy upper bound: peel maximum degree vertices, then minimalize
    VertexSet best;
    {
        Graph h = g;
        std::vector<VertexId> order;
        while (has_cycle(h)) {
            VertexId pick = 0;
            std::size_t dmax = 0;
            for (VertexId v : h.vertices())
                if (h.degree(v) > dmax) {
                    dmax = h.degree(v);
                    pick = v;
                }
            order.push_back(pick);
            h.remove_vertex(pick);
        }
        best = to_set(order);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            VertexSet trial = best;
            trial.erase(*it);
            if (is_fvs(g, trial)) best = trial;
        }
    }
    bool have_best = !best.empty() || is_forest(g);
    detail::reference_search(detail::MultiGraph::from(g), {}, best, have_best);
    if (!is_fvs(g, best)) throw internal_error("reference_min_fvs: produced a non-solution");
    return best;
}

/// Minimum solution if its size is at most k, otherwise nothing.
inline std::optional<VertexSet> reference_exact_fvs(const Graph& g, int k) {
    VertexSet s = reference_min_fvs(g);
    if (static_cast<int>(s.size()) <= k) return s;
    return std::nullopt;
}

} // namespace subfvs
