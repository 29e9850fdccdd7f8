#pragma once

#include "subfvs/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace subfvs {

using VertexId = std::uint32_t;
using VertexSet = std::set<VertexId>;

/// Simple undirected graph with stable vertex identities.
///
/// Neighbor lists are kept sorted so that every iteration order is
/// deterministic. Mutating operations are only used while building a graph;
/// afterwards callers treat values as immutable and derive new graphs with
/// the free functions below (induced_subgraph, without_vertex, ...).
class Graph {
public:
    // Journal entry for a degree-2 edge contraction, enough to expand the
    // merged vertex back (used by tests and lift bookkeeping).
    struct ContractRecord {
        VertexId kept = 0;
        VertexId removed = 0;
        std::vector<VertexId> kept_nbrs;
        std::vector<VertexId> removed_nbrs;
    };

    Graph() = default;

    void add_vertex(VertexId v) { adj_.try_emplace(v); }

    void add_edge(VertexId u, VertexId v) {
        if (u == v) throw input_error("add_edge: self-loop on vertex " + std::to_string(u));
        add_vertex(u);
        add_vertex(v);
        insert_sorted(adj_[u], v);
        insert_sorted(adj_[v], u);
    }

    void remove_vertex(VertexId v) {
        auto it = adj_.find(v);
        if (it == adj_.end()) throw input_error("remove_vertex: unknown vertex " + std::to_string(v));
        for (VertexId u : it->second) erase_sorted(adj_[u], v);
        adj_.erase(it);
    }

    bool has_vertex(VertexId v) const { return adj_.count(v) != 0; }

    bool has_edge(VertexId u, VertexId v) const {
        auto it = adj_.find(u);
        if (it == adj_.end()) return false;
        return std::binary_search(it->second.begin(), it->second.end(), v);
    }

    const std::vector<VertexId>& neighbors(VertexId v) const {
        auto it = adj_.find(v);
        if (it == adj_.end()) throw input_error("neighbors: unknown vertex " + std::to_string(v));
        return it->second;
    }

    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    std::size_t order() const { return adj_.size(); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& [v, nbrs] : adj_) twice += nbrs.size();
        return twice / 2;
    }

    bool empty() const { return adj_.empty(); }

    std::vector<VertexId> vertices() const {
        std::vector<VertexId> vs;
        vs.reserve(adj_.size());
        for (const auto& [v, nbrs] : adj_) vs.push_back(v);
        return vs;
    }

    const std::map<VertexId, std::vector<VertexId>>& adjacency() const { return adj_; }

    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> es;
        for (const auto& [v, nbrs] : adj_)
            for (VertexId u : nbrs)
                if (v < u) es.emplace_back(v, u);
        return es;
    }

    const std::vector<ContractRecord>& journal() const { return journal_; }
    std::vector<ContractRecord>& journal() { return journal_; }

private:
    static void insert_sorted(std::vector<VertexId>& xs, VertexId v) {
        auto it = std::lower_bound(xs.begin(), xs.end(), v);
        if (it == xs.end() || *it != v) xs.insert(it, v);
    }
    static void erase_sorted(std::vector<VertexId>& xs, VertexId v) {
        auto it = std::lower_bound(xs.begin(), xs.end(), v);
        if (it != xs.end() && *it == v) xs.erase(it);
    }

    std::map<VertexId, std::vector<VertexId>> adj_;
    std::vector<ContractRecord> journal_;
};

/// G[S]; vertex identities are preserved.
inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
    Graph h;
    for (VertexId v : keep) {
        if (!g.has_vertex(v))
            throw input_error("induced_subgraph: unknown vertex " + std::to_string(v));
        h.add_vertex(v);
    }
    for (VertexId v : keep)
        for (VertexId u : g.neighbors(v))
            if (u > v && keep.count(u)) h.add_edge(v, u);
    return h;
}

inline Graph without_vertex(const Graph& g, VertexId v) {
    Graph h = g;
    h.remove_vertex(v);
    return h;
}

inline Graph without_vertices(const Graph& g, const VertexSet& del) {
    Graph h = g;
    for (VertexId v : del) h.remove_vertex(v);
    return h;
}

/// Contracts the edge uv where both endpoints have degree 2 and do not lie
/// on a common triangle. The merged vertex keeps the smaller of the two ids
/// (the other id is never reused); a journal record allows expanding back.
inline std::pair<Graph, VertexId> contract_degree2_edge(const Graph& g, VertexId u, VertexId v) {
    if (!g.has_vertex(u) || !g.has_vertex(v))
        throw input_error("contract_degree2_edge: unknown vertex");
    if (!g.has_edge(u, v)) throw rule_error("contract_degree2_edge: uv is not an edge");
    if (g.degree(u) != 2 || g.degree(v) != 2)
        throw rule_error("contract_degree2_edge: endpoints must have degree 2");
    for (VertexId x : g.neighbors(u))
        if (x != v && g.has_edge(v, x))
            throw rule_error("contract_degree2_edge: endpoints share a neighbor");

    Graph::ContractRecord rec;
    rec.kept = std::min(u, v);
    rec.removed = std::max(u, v);
    rec.kept_nbrs = g.neighbors(rec.kept);
    rec.removed_nbrs = g.neighbors(rec.removed);

    VertexId a = 0, b = 0; // outer neighbors of u and v
    for (VertexId x : g.neighbors(u))
        if (x != v) a = x;
    for (VertexId x : g.neighbors(v))
        if (x != u) b = x;

    Graph h = g;
    h.remove_vertex(u);
    h.remove_vertex(v);
    h.add_vertex(rec.kept);
    h.add_edge(rec.kept, a);
    if (b != a) h.add_edge(rec.kept, b);
    h.journal().push_back(rec);
    return {h, rec.kept};
}

/// Undoes the most recent contraction recorded in the journal.
inline Graph expand_last_contraction(const Graph& g) {
    if (g.journal().empty()) throw rule_error("expand_last_contraction: empty journal");
    Graph::ContractRecord rec = g.journal().back();
    Graph h = g;
    h.journal().pop_back();
    h.remove_vertex(rec.kept);
    h.add_vertex(rec.kept);
    h.add_vertex(rec.removed);
    for (VertexId x : rec.kept_nbrs)
        if (x != rec.removed) h.add_edge(rec.kept, x);
    for (VertexId x : rec.removed_nbrs)
        if (x != rec.kept) h.add_edge(rec.removed, x);
    h.add_edge(rec.kept, rec.removed);
    return h;
}

inline std::optional<std::vector<VertexId>> find_cycle(const Graph& g) {
    std::map<VertexId, VertexId> parent;
    std::set<VertexId> done;
    for (VertexId root : g.vertices()) {
        if (parent.count(root)) continue;
        parent[root] = root;
        std::vector<VertexId> stack{root};
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            if (done.count(x)) continue;
            done.insert(x);
            for (VertexId y : g.neighbors(x)) {
                if (!parent.count(y)) {
                    parent[y] = x;
                    stack.push_back(y);
                } else if (y != parent[x] && !done.count(y)) {
                    // back edge x-y: walk both paths up to the meeting point
                    std::vector<VertexId> px{x}, py{y};
                    std::set<VertexId> seen(px.begin(), px.end());
                    VertexId cx = x;
                    while (parent[cx] != cx) {
                        cx = parent[cx];
                        px.push_back(cx);
                        seen.insert(cx);
                    }
                    VertexId cy = y;
                    while (!seen.count(cy)) {
                        cy = parent[cy];
                        py.push_back(cy);
                    }
                    std::vector<VertexId> cycle;
                    for (VertexId w : px) {
                        cycle.push_back(w);
                        if (w == cy) break;
                    }
                    std::reverse(cycle.begin(), cycle.end());
                    for (std::size_t i = 0; i + 1 < py.size(); ++i) cycle.push_back(py[i]);
                    return cycle;
                }
            }
        }
    }
    return std::nullopt;
}

inline bool has_cycle(const Graph& g) { return find_cycle(g).has_value(); }

inline bool is_forest(const Graph& g) { return !has_cycle(g); }

/// True iff G - S is acyclic, i.e. S is a feedback vertex set of G.
inline bool is_fvs(const Graph& g, const VertexSet& s) {
    VertexSet keep;
    for (VertexId v : g.vertices())
        if (!s.count(v)) keep.insert(v);
    return is_forest(induced_subgraph(g, keep));
}

inline std::vector<std::vector<VertexId>> components(const Graph& g) {
    std::vector<std::vector<VertexId>> comps;
    std::set<VertexId> seen;
    for (VertexId root : g.vertices()) {
        if (seen.count(root)) continue;
        std::vector<VertexId> comp, stack{root};
        seen.insert(root);
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (VertexId y : g.neighbors(x))
                if (seen.insert(y).second) stack.push_back(y);
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline bool is_connected_subset(const Graph& g, const VertexSet& s) {
    if (s.empty()) return false;
    return components(induced_subgraph(g, s)).size() == 1;
}

/// Walks the whole structure and checks simplicity and adjacency symmetry.
inline void validate_graph(const Graph& g) {
    for (const auto& [v, nbrs] : g.adjacency()) {
        if (!std::is_sorted(nbrs.begin(), nbrs.end()))
            throw internal_error("validate_graph: unsorted neighbor list");
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            throw internal_error("validate_graph: parallel edge");
        for (VertexId u : nbrs) {
            if (u == v) throw internal_error("validate_graph: self-loop");
            if (!g.has_vertex(u)) throw internal_error("validate_graph: dangling neighbor");
            if (!g.has_edge(u, v)) throw internal_error("validate_graph: asymmetric adjacency");
        }
    }
}

inline VertexSet to_set(const std::vector<VertexId>& xs) { return VertexSet(xs.begin(), xs.end()); }

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet r = a;
    r.insert(b.begin(), b.end());
    return r;
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    for (VertexId v : a)
        if (!b.count(v)) r.insert(v);
    return r;
}

inline VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet r;
    for (VertexId v : a)
        if (b.count(v)) r.insert(v);
    return r;
}

} // namespace subfvs
