#pragma once

#include "subfvs/graph.hpp"
#include "subfvs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

namespace subfvs {

namespace detail {

// maximal chain of degree-2 vertices starting at `u` through `first`;
// returns the chain if it closes back to u (then {u} + chain is a cycle
// with at most one vertex of degree != 2)
inline std::optional<std::vector<VertexId>> chain_back_to(const Graph& g, VertexId u,
                                                          VertexId first) {
    std::vector<VertexId> chain;
    VertexId prev = u, cur = first;
    while (g.degree(cur) == 2) {
        chain.push_back(cur);
        VertexId next = g.neighbors(cur)[0] == prev ? g.neighbors(cur)[1] : g.neighbors(cur)[0];
        prev = cur;
        cur = next;
        if (cur == u) return chain;
    }
    return std::nullopt;
}

inline std::optional<std::vector<VertexId>> find_semidisjoint_cycle(const Graph& g) {
    for (const auto& comp : components(g)) {
        bool all_two = true;
        for (VertexId v : comp)
            if (g.degree(v) != 2) all_two = false;
        if (all_two && comp.size() >= 3) return comp;
    }
    for (VertexId u : g.vertices()) {
        if (g.degree(u) < 3) continue;
        for (VertexId x : g.neighbors(u)) {
            auto chain = chain_back_to(g, u, x);
            if (chain) {
                chain->push_back(u);
                return chain;
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

/// Local-ratio 2-approximation of a minimum feedback vertex set: weights
/// start at 1, semidisjoint cycles are discounted uniformly, everything else
/// proportionally to degree-1, zeroed vertices are stacked and a reverse
/// scan keeps only the necessary ones.
inline VertexSet two_approx_fvs(const Graph& g0) {
    constexpr double eps = 1e-9;
    Graph g = g0;
    std::map<VertexId, double> w;
    for (VertexId v : g.vertices()) w[v] = 1.0;
    std::vector<VertexId> stacked;

    auto cleanup = [&g]() {
        bool again = true;
        while (again) {
            again = false;
            for (VertexId v : g.vertices()) {
                if (g.degree(v) <= 1) {
                    g.remove_vertex(v);
                    again = true;
                }
            }
        }
    };

    cleanup();
    while (!g.empty()) {
        if (auto cyc = detail::find_semidisjoint_cycle(g)) {
            double gamma = std::numeric_limits<double>::max();
            for (VertexId v : *cyc) gamma = std::min(gamma, w[v]);
            for (VertexId v : *cyc) w[v] -= gamma;
        } else {
            double gamma = std::numeric_limits<double>::max();
            for (VertexId v : g.vertices())
                gamma = std::min(gamma, w[v] / (static_cast<double>(g.degree(v)) - 1.0));
            for (VertexId v : g.vertices())
                w[v] -= gamma * (static_cast<double>(g.degree(v)) - 1.0);
        }
        for (VertexId v : g.vertices()) {
            if (w[v] <= eps) {
                stacked.push_back(v);
                g.remove_vertex(v);
            }
        }
        cleanup();
    }

    VertexSet fvs(stacked.begin(), stacked.end());
    for (auto it = stacked.rbegin(); it != stacked.rend(); ++it) {
        VertexSet trial = fvs;
        trial.erase(*it);
        if (is_fvs(g0, trial)) fvs = trial;
    }
    return fvs;
}

/// Complete bipartite subgraph with parts of size r, if one exists. Because
/// G - M is acyclic, any such subgraph has a part with at least r-1 vertices
/// in M; candidate parts are enumerated accordingly, smallest witness first.
inline std::optional<std::pair<VertexSet, VertexSet>> find_krr(const Graph& g, const VertexSet& m,
                                                               int r) {
    if (r < 2) throw input_error("find_krr: r must be at least 2");
    const std::vector<VertexId> mod(m.begin(), m.end());
    const std::vector<VertexId> all = g.vertices();
    const int mm = static_cast<int>(mod.size());
    if (mm < r - 1) return std::nullopt;

    std::vector<int> idx(r - 1);
    for (int i = 0; i < r - 1; ++i) idx[i] = i;
    while (true) {
        // common neighborhood of the chosen (r-1)-subset of M
        std::vector<VertexId> common;
        for (int i = 0; i < r - 1; ++i) {
            const auto& nb = g.neighbors(mod[idx[i]]);
            if (i == 0) {
                common = nb;
            } else {
                std::vector<VertexId> next;
                std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(),
                                      std::back_inserter(next));
                common = std::move(next);
            }
        }
        VertexSet part_a;
        for (int i = 0; i < r - 1; ++i) part_a.insert(mod[idx[i]]);

        for (VertexId extra : all) {
            if (part_a.count(extra)) continue;
            std::vector<VertexId> cand;
            const auto& nb = g.neighbors(extra);
            std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(),
                                  std::back_inserter(cand));
            VertexSet b;
            for (VertexId v : cand) {
                if (v == extra || part_a.count(v)) continue;
                b.insert(v);
                if (static_cast<int>(b.size()) == r) break;
            }
            if (static_cast<int>(b.size()) == r) {
                VertexSet a = part_a;
                a.insert(extra);
                return std::make_pair(a, b);
            }
        }

        // next (r-1)-subset in lexicographic order
        int i = r - 2;
        while (i >= 0 && idx[i] == mm - (r - 1) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r - 1; ++j) idx[j] = idx[j - 1] + 1;
    }
    return std::nullopt;
}

/// One member of the preliminary instance family; `lift` collects the
/// vertices deleted on the branching path, so a member solution S lifts to
/// S together with `lift`.
struct FamilyMember {
    Graph g;
    int k = 0;
    VertexSet modulator;
    VertexSet lift;
};

/// Branches on a verified complete bipartite subgraph: each child drops all
/// but one vertex of one part. An empty list means the instance is negative.
inline std::vector<FamilyMember> branch_krr(const FamilyMember& parent, const VertexSet& a,
                                            const VertexSet& b, int r) {
    for (VertexId x : a)
        for (VertexId y : b)
            if (!parent.g.has_edge(x, y)) throw rule_error("branch_krr: parts are not complete");
    if (static_cast<int>(a.size()) != r || static_cast<int>(b.size()) != r ||
        !set_intersect(a, b).empty())
        throw rule_error("branch_krr: malformed parts");

    std::vector<FamilyMember> children;
    if (parent.k < r - 1) return children;
    for (const VertexSet* part : {&a, &b}) {
        for (VertexId survivor : *part) {
            VertexSet cut = *part;
            cut.erase(survivor);
            FamilyMember child;
            child.g = without_vertices(parent.g, cut);
            child.k = parent.k - (r - 1);
            child.modulator = set_minus(parent.modulator, cut);
            child.lift = set_union(parent.lift, cut);
            children.push_back(std::move(child));
        }
    }
    return children;
}

struct FamilyResult {
    enum class Kind { Yes, No, Family } kind = Kind::Family;
    VertexSet certificate; // for Yes
    std::vector<FamilyMember> members;
};

/// Bootstrap: 2-approximate, resolve the trivial cases, then branch away
/// the complete bipartite subgraphs so that every member is K_{r,r}-free.
inline FamilyResult build_instance_family(const Graph& g0, int k0, int r,
                                          SolveStats* stats = nullptr) {
    FamilyResult res;
    const VertexSet m0 = two_approx_fvs(g0);
    if (static_cast<int>(m0.size()) <= k0) {
        res.kind = FamilyResult::Kind::Yes;
        res.certificate = m0;
        return res;
    }
    if (static_cast<int>(m0.size()) > 2 * k0) {
        res.kind = FamilyResult::Kind::No;
        return res;
    }

    std::vector<FamilyMember> work{{g0, k0, m0, {}}};
    while (!work.empty()) {
        FamilyMember cur = std::move(work.back());
        work.pop_back();
        const auto krr = find_krr(cur.g, cur.modulator, r);
        if (!krr) {
            res.members.push_back(std::move(cur));
            continue;
        }
        auto children = branch_krr(cur, krr->first, krr->second, r);
        if (stats) {
            const ProgressMeasure pm{2L * cur.k, 0, 0};
            for (const auto& c : children)
                stats->record_transition("branch_biclique", pm, ProgressMeasure{2L * c.k, 0, 0});
            if (children.empty()) ++stats->rule_fires["branch_biclique"];
        }
        for (auto& c : children) work.push_back(std::move(c));
    }
    std::sort(res.members.begin(), res.members.end(),
              [](const FamilyMember& x, const FamilyMember& y) {
                  if (x.k != y.k) return x.k > y.k;
                  return x.lift < y.lift;
              });
    res.kind = FamilyResult::Kind::Family;
    return res;
}

} // namespace subfvs
