#pragma once

#include "subfvs/ann.hpp"
#include "subfvs/graph.hpp"
#include "subfvs/stats.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subfvs {

using Lift = std::function<VertexSet(const VertexSet&)>;

/// Result of applying a reduction or branching rule: child instances, one
/// lift per child mapping a child solution back to a parent solution, and
/// the rule tag used for stats. The parent is solvable iff some child is;
/// `trivially_no` short-circuits a child known to be negative.
struct RuleOutcome {
    std::string rule;
    std::vector<Instance> children;
    std::vector<Lift> lifts;
    bool trivially_no = false;
};

inline Instance trivial_no_instance() {
    Instance inst;
    inst.g.add_edge(0, 1);
    inst.g.add_edge(1, 2);
    inst.g.add_edge(2, 0);
    inst.k = 0;
    inst.modulator = {0};
    return inst;
}

/// Checks that a lifted solution actually solves the given instance.
inline void verify_solution(const Instance& inst, const VertexSet& sol) {
    if (static_cast<int>(sol.size()) > inst.k)
        throw internal_error("lift produced an oversized solution");
    for (VertexId v : sol)
        if (!inst.g.has_vertex(v)) throw internal_error("lift produced an unknown vertex");
    if (!is_fvs(inst.g, sol)) throw internal_error("lift produced a non feedback vertex set");
    for (const VertexSet& h : inst.must_hit)
        if (set_intersect(sol, h).empty()) throw internal_error("lift missed a must-hit set");
}

// --------------------------------------------------------------------------
// prune_leaf: delete a vertex of degree <= 1 outside the modulator.
// --------------------------------------------------------------------------
inline std::optional<RuleOutcome> apply_prune_leaf(const Instance& inst) {
    for (VertexId v : inst.g.vertices()) {
        if (inst.modulator.count(v) || inst.g.degree(v) > 1) continue;
        RuleOutcome out;
        out.rule = "prune_leaf";
        Instance child = inst;
        child.g = without_vertex(inst.g, v);
        out.children.push_back(std::move(child));
        out.lifts.emplace_back([](const VertexSet& s) { return s; });
        return out;
    }
    return std::nullopt;
}

// --------------------------------------------------------------------------
// smooth_path: contract the middle edge of a path q-u-v-w of four distinct
// degree-2 vertices outside the modulator. The merged vertex keeps the
// smaller id, so the lift is the identity.
// --------------------------------------------------------------------------
inline std::optional<RuleOutcome> apply_smooth_path(const Instance& inst) {
    for (const auto& [u, v] : inst.g.edges()) {
        if (inst.modulator.count(u) || inst.modulator.count(v)) continue;
        if (inst.g.degree(u) != 2 || inst.g.degree(v) != 2) continue;
        const VertexId q = inst.g.neighbors(u)[0] == v ? inst.g.neighbors(u)[1] : inst.g.neighbors(u)[0];
        const VertexId w = inst.g.neighbors(v)[0] == u ? inst.g.neighbors(v)[1] : inst.g.neighbors(v)[0];
        if (q == w) continue;
        if (inst.modulator.count(q) || inst.modulator.count(w)) continue;
        if (inst.g.degree(q) != 2 || inst.g.degree(w) != 2) continue;
        RuleOutcome out;
        out.rule = "smooth_path";
        Instance child = inst;
        child.g = contract_degree2_edge(inst.g, u, v).first;
        out.children.push_back(std::move(child));
        out.lifts.emplace_back([](const VertexSet& s) { return s; });
        return out;
    }
    return std::nullopt;
}

// --------------------------------------------------------------------------
// absorb_high_degree: move a forest vertex with at least t modulator
// neighbors into the modulator.
// --------------------------------------------------------------------------
inline std::optional<RuleOutcome> apply_absorb_high_degree(const Instance& inst, std::uint64_t t) {
    if (t < 1) throw input_error("absorb_high_degree: t must be positive");
    for (VertexId v : inst.g.vertices()) {
        if (inst.modulator.count(v)) continue;
        std::uint64_t dm = 0;
        for (VertexId u : inst.g.neighbors(v))
            if (inst.modulator.count(u)) ++dm;
        if (dm < t) continue;
        RuleOutcome out;
        out.rule = "absorb_high_degree";
        Instance child = inst;
        child.modulator.insert(v);
        out.children.push_back(std::move(child));
        out.lifts.emplace_back([](const VertexSet& s) { return s; });
        return out;
    }
    return std::nullopt;
}

// --------------------------------------------------------------------------
// drop_clone_tree: at least |X|+2 disjoint downward-closed subtrees with the
// same modulator neighborhood X, either all components or all rooted at
// children of one vertex; a redundant one can be deleted.
// --------------------------------------------------------------------------
struct CloneTreeCertificate {
    VertexSet x;
    std::vector<VertexSet> trees; // sorted by smallest member
    bool components = false;      // otherwise: rooted below a common parent
};

namespace detail {

inline std::optional<CloneTreeCertificate> group_by_neighborhood(
    const Instance& inst, const std::vector<VertexSet>& candidates, bool components) {
    std::map<std::vector<VertexId>, std::vector<VertexSet>> groups;
    for (const VertexSet& t : candidates) {
        const VertexSet nm = modulator_neighbors(inst, t);
        groups[std::vector<VertexId>(nm.begin(), nm.end())].push_back(t);
    }
    for (auto& [x, trees] : groups) {
        if (x.empty()) continue;
        if (trees.size() < x.size() + 2) continue;
        CloneTreeCertificate cert;
        cert.x = VertexSet(x.begin(), x.end());
        std::sort(trees.begin(), trees.end(),
                  [](const VertexSet& a, const VertexSet& b) { return *a.begin() < *b.begin(); });
        cert.trees = trees;
        cert.components = components;
        return cert;
    }
    return std::nullopt;
}

} // namespace detail

inline std::optional<CloneTreeCertificate> find_clone_trees(const Instance& inst) {
    const Graph forest = inst.forest();
    // (a) whole components grouped by modulator neighborhood
    std::vector<VertexSet> comps;
    for (const auto& c : components(forest)) comps.push_back(to_set(c));
    if (auto cert = detail::group_by_neighborhood(inst, comps, true)) return cert;

    // (b) child subtrees below a common parent
    const RootedForest rf = root_forest(inst);
    for (VertexId parent : forest.vertices()) {
        auto it = rf.children.find(parent);
        if (it == rf.children.end() || it->second.size() < 3) continue;
        std::vector<VertexSet> subtrees;
        const VertexSet live = to_set(forest.vertices());
        for (VertexId c : it->second)
            subtrees.push_back(detail::downward_subtree(rf, live, c));
        if (auto cert = detail::group_by_neighborhood(inst, subtrees, false)) return cert;
    }
    return std::nullopt;
}

/// A tree is redundant when every modulator vertex seeing it twice is also
/// seen twice by a sibling. One witness per x is marked; the smallest
/// unmarked tree is redundant.
inline std::size_t pick_redundant(const Instance& inst, const CloneTreeCertificate& cert) {
    if (cert.trees.size() <= cert.x.size())
        throw internal_error("pick_redundant: family not larger than X");
    std::vector<bool> marked(cert.trees.size(), false);
    for (VertexId x : cert.x) {
        for (std::size_t i = 0; i < cert.trees.size(); ++i) {
            std::size_t deg = 0;
            for (VertexId u : inst.g.neighbors(x))
                if (cert.trees[i].count(u)) ++deg;
            if (deg >= 2) {
                marked[i] = true;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < cert.trees.size(); ++i)
        if (!marked[i]) return i;
    throw internal_error("pick_redundant: no unmarked tree");
}

inline RuleOutcome apply_drop_clone_tree(const Instance& inst, const CloneTreeCertificate& cert) {
    const std::size_t drop = pick_redundant(inst, cert);
    const VertexSet dropped = cert.trees[drop];

    RuleOutcome out;
    out.rule = "drop_clone_tree";
    Instance child = inst;
    child.g = without_vertices(inst.g, dropped);
    out.children.push_back(std::move(child));

    const Instance parent = inst;
    out.lifts.emplace_back([parent, cert, drop, dropped](const VertexSet& sol) {
        VertexSet all_tree_vertices;
        for (const VertexSet& t : cert.trees) all_tree_vertices = set_union(all_tree_vertices, t);
        const VertexSet x_missing = set_minus(cert.x, sol);

        VertexSet lifted;
        if (x_missing.size() >= 2) {
            lifted = set_union(set_minus(sol, all_tree_vertices), cert.x);
        } else if (x_missing.size() == 1) {
            const VertexId x = *x_missing.begin();
            if (is_fvs(parent.g, sol)) {
                lifted = sol;
            } else {
                std::size_t donor = cert.trees.size();
                std::size_t x_deg_in_dropped = 0;
                for (VertexId u : parent.g.neighbors(x))
                    if (dropped.count(u)) ++x_deg_in_dropped;
                if (x_deg_in_dropped >= 2) {
                    for (std::size_t i = 0; i < cert.trees.size(); ++i) {
                        if (i == drop) continue;
                        std::size_t deg = 0;
                        for (VertexId u : parent.g.neighbors(x))
                            if (cert.trees[i].count(u)) ++deg;
                        if (deg >= 2 && !set_intersect(cert.trees[i], sol).empty()) {
                            donor = i;
                            break;
                        }
                    }
                } else {
                    for (std::size_t i = 0; i < cert.trees.size(); ++i) {
                        if (i == drop) continue;
                        if (!set_intersect(cert.trees[i], sol).empty()) {
                            donor = i;
                            break;
                        }
                    }
                }
                if (donor == cert.trees.size())
                    throw internal_error("drop_clone_tree lift: no donor tree");
                const VertexId v = *set_intersect(cert.trees[donor], sol).begin();
                lifted = sol;
                lifted.erase(v);
                lifted.insert(x);
            }
        } else {
            lifted = sol;
        }
        verify_solution(parent, lifted);
        return lifted;
    });
    return out;
}

// --------------------------------------------------------------------------
// take_hub: a subtree holding d_M(T) + border(T) vertex-disjoint paths whose
// endpoints all neighbor one modulator vertex u forces u into a solution.
// --------------------------------------------------------------------------
struct HubCertificate {
    VertexId hub = 0;
    VertexSet tree;
    std::vector<std::vector<VertexId>> paths;
};

namespace detail {

inline std::vector<VertexId> tree_path(const Graph& g, const VertexSet& within, VertexId from,
                                       VertexId to) {
    std::map<VertexId, VertexId> pred;
    std::vector<VertexId> queue{from};
    pred[from] = from;
    for (std::size_t i = 0; i < queue.size() && !pred.count(to); ++i) {
        for (VertexId u : g.neighbors(queue[i])) {
            if (!within.count(u) || pred.count(u)) continue;
            pred[u] = queue[i];
            queue.push_back(u);
        }
    }
    std::vector<VertexId> path{to};
    while (path.back() != from) path.push_back(pred.at(path.back()));
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace detail

inline std::optional<HubCertificate> find_hub(const Instance& inst, const VertexSet& tree) {
    const SubtreeMeasure m = measure_subtree(inst, tree);
    const std::size_t need = static_cast<std::size_t>(m.m_deg + m.border);
    if (need == 0) return std::nullopt;

    const std::vector<VertexSet> parts = sharp_decompose(inst, tree);
    // every modulator vertex with two neighbors in a part yields one path
    std::map<VertexId, std::vector<std::size_t>> sites;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::map<VertexId, int> deg;
        for (VertexId v : parts[i])
            for (VertexId u : inst.g.neighbors(v))
                if (inst.modulator.count(u)) ++deg[u];
        for (const auto& [u, d] : deg)
            if (d >= 2) sites[u].push_back(i);
    }
    for (const auto& [u, part_ids] : sites) {
        if (part_ids.size() < need) continue;
        HubCertificate cert;
        cert.hub = u;
        cert.tree = tree;
        for (std::size_t i = 0; i < need; ++i) {
            const VertexSet& part = parts[part_ids[i]];
            std::vector<VertexId> ends;
            for (VertexId v : inst.g.neighbors(u)) {
                if (part.count(v)) ends.push_back(v);
                if (ends.size() == 2) break;
            }
            cert.paths.push_back(detail::tree_path(inst.g, part, ends[0], ends[1]));
        }
        return cert;
    }
    return std::nullopt;
}

inline void verify_hub_certificate(const Instance& inst, const HubCertificate& cert) {
    const SubtreeMeasure m = measure_subtree(inst, cert.tree);
    if (cert.paths.size() < static_cast<std::size_t>(m.m_deg + m.border))
        throw internal_error("hub certificate: too few paths");
    if (!inst.modulator.count(cert.hub)) throw internal_error("hub certificate: hub not in modulator");
    VertexSet used;
    for (const auto& path : cert.paths) {
        if (path.size() < 2) throw internal_error("hub certificate: path too short");
        if (!inst.g.has_edge(cert.hub, path.front()) || !inst.g.has_edge(cert.hub, path.back()))
            throw internal_error("hub certificate: endpoint not adjacent to hub");
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (!inst.g.has_edge(path[i], path[i + 1]))
                throw internal_error("hub certificate: broken path");
        for (VertexId v : path) {
            if (!cert.tree.count(v)) throw internal_error("hub certificate: path leaves tree");
            if (!used.insert(v).second) throw internal_error("hub certificate: paths overlap");
        }
    }
}

inline RuleOutcome apply_take_hub(const Instance& inst, const HubCertificate& cert) {
    verify_hub_certificate(inst, cert);
    RuleOutcome out;
    out.rule = "take_hub";
    if (inst.k < 1) {
        out.trivially_no = true;
        out.children.push_back(trivial_no_instance());
        out.lifts.emplace_back([](const VertexSet& s) { return s; });
        return out;
    }
    Instance child;
    child.g = without_vertex(inst.g, cert.hub);
    child.k = inst.k - 1;
    child.modulator = inst.modulator;
    child.modulator.erase(cert.hub);
    for (const VertexSet& h : inst.must_hit)
        if (!h.count(cert.hub)) child.must_hit.push_back(h);
    out.children.push_back(std::move(child));

    const VertexId hub = cert.hub;
    out.lifts.emplace_back([hub](const VertexSet& sol) {
        VertexSet lifted = sol;
        lifted.insert(hub);
        return lifted;
    });
    return out;
}

// --------------------------------------------------------------------------
// branch_virtual_biclique: a biclique minor certificate (t modulator
// vertices X, t small disjoint non-adjacent trees all seeing X) branches
// into "delete almost all of X" children and "absorb the trees, record them
// as must-hit" children.
// --------------------------------------------------------------------------
struct BicliqueMinor {
    VertexSet x;
    std::vector<VertexSet> trees;
};

inline void verify_biclique_minor(const Instance& inst, const BicliqueMinor& bm, std::uint64_t t,
                                  double max_tree_size) {
    if (bm.x.size() != t || bm.trees.size() != t)
        throw internal_error("biclique minor: wrong arity");
    for (VertexId x : bm.x)
        if (!inst.modulator.count(x)) throw internal_error("biclique minor: X leaves modulator");
    VertexSet used;
    for (const VertexSet& tree : bm.trees) {
        require_subtree(inst, tree);
        if (static_cast<double>(tree.size()) > max_tree_size)
            throw internal_error("biclique minor: tree too large");
        const VertexSet nm = modulator_neighbors(inst, tree);
        if (!set_minus(bm.x, nm).empty())
            throw internal_error("biclique minor: tree misses part of X");
        for (VertexId v : tree)
            if (!used.insert(v).second) throw internal_error("biclique minor: trees overlap");
    }
    for (std::size_t i = 0; i < bm.trees.size(); ++i)
        for (std::size_t j = i + 1; j < bm.trees.size(); ++j)
            for (VertexId v : bm.trees[i])
                for (VertexId u : inst.g.neighbors(v))
                    if (bm.trees[j].count(u))
                        throw internal_error("biclique minor: trees adjacent");
}

inline RuleOutcome apply_branch_virtual_biclique(const Instance& inst, const BicliqueMinor& bm,
                                                 std::uint64_t t, double max_tree_size) {
    if (t < 2) throw input_error("branch_virtual_biclique: t must be at least 2");
    verify_biclique_minor(inst, bm, t, max_tree_size);
    RuleOutcome out;
    out.rule = "branch_virtual_biclique";
    const long tk = static_cast<long>(t);

    if (inst.k >= tk - 1) {
        for (VertexId keep : bm.x) {
            VertexSet cut = bm.x;
            cut.erase(keep);
            Instance child;
            child.g = without_vertices(inst.g, cut);
            child.k = inst.k - static_cast<int>(t - 1);
            child.modulator = set_minus(inst.modulator, cut);
            for (const VertexSet& h : inst.must_hit)
                if (set_intersect(h, cut).empty()) child.must_hit.push_back(h);
            out.children.push_back(std::move(child));
            out.lifts.emplace_back([cut](const VertexSet& sol) { return set_union(sol, cut); });
        }
    }
    if (inst.k >= static_cast<long>(inst.must_hit.size()) + tk - 1) {
        for (std::size_t skip = 0; skip < bm.trees.size(); ++skip) {
            Instance child = inst;
            for (std::size_t j = 0; j < bm.trees.size(); ++j) {
                if (j == skip) continue;
                child.modulator = set_union(child.modulator, bm.trees[j]);
                child.must_hit.push_back(bm.trees[j]);
            }
            out.children.push_back(std::move(child));
            out.lifts.emplace_back([](const VertexSet& sol) { return sol; });
        }
    }
    if (out.children.empty()) {
        out.trivially_no = true;
        out.children.push_back(trivial_no_instance());
        out.lifts.emplace_back([](const VertexSet& s) { return s; });
    }
    return out;
}

} // namespace subfvs
