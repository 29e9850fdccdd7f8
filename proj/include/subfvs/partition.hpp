#pragma once

#include "subfvs/ann.hpp"
#include "subfvs/params.hpp"
#include "subfvs/rules.hpp"
#include "subfvs/stats.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace subfvs {

struct PartTree {
    VertexId root = 0;
    VertexSet vertices;
    int m_deg = 0;
    bool high = false; // d_M >= t
};

struct UniformPartition {
    std::uint64_t t = 0;
    std::vector<PartTree> trees; // sorted by root

    std::size_t high_count() const {
        std::size_t c = 0;
        for (const auto& tr : trees) c += tr.high ? 1 : 0;
        return c;
    }
};

/// One line per tree: `{+|-} root=<id> d_M=<n> b=<n> size=<n> vertices=<ids>`.
inline std::string dump_partition(const Instance& inst, const UniformPartition& up) {
    std::ostringstream out;
    for (const PartTree& tr : up.trees) {
        const SubtreeMeasure m = measure_subtree(inst, tr.vertices);
        out << (tr.high ? '+' : '-') << " root=" << tr.root << " d_M=" << m.m_deg
            << " b=" << m.border << " size=" << tr.vertices.size() << " vertices=";
        bool first = true;
        for (VertexId v : tr.vertices) {
            if (!first) out << ',';
            out << v;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

/// Checks the three defining properties of a t-uniform partition of the
/// subforest covered by `up` (each vertex in one tree is implicit in the
/// construction; callers pass the forest they expect to be tiled).
inline void validate_partition(const Instance& inst, const UniformPartition& up,
                               const Thresholds& th, const VertexSet& expected_cover) {
    VertexSet covered;
    std::map<VertexId, VertexId> owner_root;
    for (const PartTree& tr : up.trees) {
        require_subtree(inst, tr.vertices);
        for (VertexId v : tr.vertices) {
            if (!covered.insert(v).second) throw invariant_error("partition: trees overlap");
            owner_root[v] = tr.root;
        }
        const SubtreeMeasure m = measure_subtree(inst, tr.vertices);
        if (m.m_deg != tr.m_deg) throw invariant_error("partition: stale modulator degree");
        if (static_cast<std::uint64_t>(m.m_deg) > 2 * up.t)
            throw invariant_error("partition: modulator degree above 2t");
        if (tr.high != (static_cast<std::uint64_t>(m.m_deg) >= up.t))
            throw invariant_error("partition: wrong high/low class");
        if (static_cast<double>(tr.vertices.size()) > th.tree_size_bound(m.db()))
            throw invariant_error("partition: tree larger than size bound");
    }
    if (covered != expected_cover) throw invariant_error("partition: does not tile the forest");

    // a low root's forest parent must be the root of a high tree
    const RootedForest rf = root_forest(inst);
    std::map<VertexId, const PartTree*> by_root;
    for (const PartTree& tr : up.trees) by_root[tr.root] = &tr;
    for (const PartTree& tr : up.trees) {
        if (tr.high) continue;
        const VertexId p = rf.parent.at(tr.root);
        if (p == tr.root || !expected_cover.count(p)) continue;
        auto it = by_root.find(p);
        if (it == by_root.end() || !it->second->high)
            throw invariant_error("partition: low root hangs below a non-root or low tree");
    }
}

struct PartitionOutcome {
    enum class Kind { OversizedTree, Minor, Partition } kind = Kind::Partition;
    VertexSet oversized;
    VertexId oversized_root = 0;
    BicliqueMinor minor;
    UniformPartition partition;
};

/// Extraction of a biclique minor out of a partition with many high trees:
/// contract the high trees, keep those of contracted degree <= 2, 2-color,
/// take the bigger class, and find t trees sharing a t-subset of their
/// common modulator neighborhood.
inline std::optional<BicliqueMinor> extract_biclique_minor(const Instance& inst,
                                                           const std::vector<PartTree>& parts,
                                                           std::uint64_t t, const Thresholds& th) {
    std::vector<const PartTree*> highs;
    for (const PartTree& p : parts)
        if (p.high) highs.push_back(&p);
    if (static_cast<double>(highs.size()) <
        th.high_part_ratio() * static_cast<double>(inst.modulator.size()))
        throw rule_error("extract_biclique_minor: not enough high trees");

    // contracted forest over the high trees (direct forest edges only)
    std::map<VertexId, std::size_t> owner;
    for (std::size_t i = 0; i < highs.size(); ++i)
        for (VertexId v : highs[i]->vertices) owner[v] = i;
    std::vector<std::set<std::size_t>> adjacent(highs.size());
    for (std::size_t i = 0; i < highs.size(); ++i) {
        for (VertexId v : highs[i]->vertices) {
            for (VertexId u : inst.g.neighbors(v)) {
                if (inst.modulator.count(u)) continue;
                auto it = owner.find(u);
                if (it != owner.end() && it->second != i) adjacent[i].insert(it->second);
            }
        }
    }
    // proper 2-coloring of the contracted forest
    std::vector<int> color(highs.size(), -1);
    for (std::size_t s = 0; s < highs.size(); ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            const std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t y : adjacent[x]) {
                if (color[y] == -1) {
                    color[y] = 1 - color[x];
                    stack.push_back(y);
                }
            }
        }
    }
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < highs.size(); ++i) {
        if (adjacent[i].size() > 2) continue;
        (color[i] == 0 ? n0 : n1) += 1;
    }
    const int chosen = n1 > n0 ? 1 : 0;

    std::map<std::vector<VertexId>, std::vector<const PartTree*>> groups;
    for (std::size_t i = 0; i < highs.size(); ++i) {
        if (adjacent[i].size() > 2 || color[i] != chosen) continue;
        if (static_cast<double>(highs[i]->vertices.size()) > th.minor_tree_size_bound()) continue;
        const VertexSet nm = modulator_neighbors(inst, highs[i]->vertices);
        if (nm.size() < t) continue;
        groups[std::vector<VertexId>(nm.begin(), nm.end())].push_back(highs[i]);
    }
    for (const auto& [x, trees] : groups) {
        if (trees.size() < t) continue;
        BicliqueMinor bm;
        for (std::size_t i = 0; i < t; ++i) bm.x.insert(x[i]);
        for (std::size_t i = 0; i < t; ++i) bm.trees.push_back(trees[i]->vertices);
        verify_biclique_minor(inst, bm, t, th.minor_tree_size_bound());
        return bm;
    }
    return std::nullopt;
}

/// Layered greedy construction of a t-uniform partition of G - M, working
/// from the deepest layer upward. Each vertex absorbs a minimal set of its
/// low children until the modulator degree reaches t. Fails upward with an
/// oversized tree or a biclique minor.
///
/// Roots listed in `waived` are exempt from the size test; the caller adds
/// them after the constructive path search of take_hub failed on the
/// oversized tree, trading the size bound for progress.
inline PartitionOutcome partition_trees(const Instance& inst, std::uint64_t t, Thresholds& th,
                                        const VertexSet& waived = {},
                                        SolveStats* stats = nullptr) {
    if (apply_prune_leaf(inst) || apply_smooth_path(inst) || find_clone_trees(inst))
        throw rule_error("partition_trees: reduction rules still apply");
    for (VertexId v : inst.g.vertices()) {
        if (inst.modulator.count(v)) continue;
        std::uint64_t dm = 0;
        for (VertexId u : inst.g.neighbors(v))
            if (inst.modulator.count(u)) ++dm;
        if (dm >= t) throw rule_error("partition_trees: a vertex has modulator degree >= t");
    }

    const RootedForest rf = root_forest(inst);
    std::map<int, std::vector<VertexId>> layers;
    int max_depth = 0;
    for (const auto& [v, d] : rf.depth) {
        layers[d].push_back(v);
        max_depth = std::max(max_depth, d);
    }

    std::map<VertexId, PartTree> parts; // keyed by root
    std::size_t high_count = 0;

    auto m_degree_of = [&inst](const VertexSet& vs) {
        return static_cast<int>(modulator_neighbors(inst, vs).size());
    };

    for (int depth = max_depth; depth >= 0; --depth) {
        auto lit = layers.find(depth);
        if (lit == layers.end()) continue;
        for (VertexId v : lit->second) {
            std::vector<VertexId> low_children;
            auto cit = rf.children.find(v);
            if (cit != rf.children.end())
                for (VertexId c : cit->second)
                    if (!parts.at(c).high) low_children.push_back(c);

            VertexSet acc{v};
            for (VertexId c : low_children) acc = set_union(acc, parts.at(c).vertices);
            std::vector<VertexId> absorb;
            if (static_cast<std::uint64_t>(m_degree_of(acc)) < t) {
                absorb = low_children;
            } else {
                // greedy prefix until degree t, then shrink to a minimal set
                acc = {v};
                for (VertexId c : low_children) {
                    absorb.push_back(c);
                    acc = set_union(acc, parts.at(c).vertices);
                    if (static_cast<std::uint64_t>(m_degree_of(acc)) >= t) break;
                }
                for (std::size_t i = 0; i < absorb.size();) {
                    VertexSet trial{v};
                    for (std::size_t j = 0; j < absorb.size(); ++j)
                        if (j != i) trial = set_union(trial, parts.at(absorb[j]).vertices);
                    if (static_cast<std::uint64_t>(m_degree_of(trial)) >= t) {
                        absorb.erase(absorb.begin() + static_cast<std::ptrdiff_t>(i));
                        acc = trial;
                    } else {
                        ++i;
                    }
                }
            }

            const SubtreeMeasure m = measure_subtree(inst, acc);
            if (static_cast<double>(acc.size()) > th.tree_size_bound(m.db()) && !waived.count(v)) {
                PartitionOutcome out;
                out.kind = PartitionOutcome::Kind::OversizedTree;
                out.oversized = acc;
                out.oversized_root = v;
                return out;
            }

            for (VertexId c : absorb) parts.erase(c);
            PartTree tree;
            tree.root = v;
            tree.vertices = std::move(acc);
            tree.m_deg = m.m_deg;
            tree.high = static_cast<std::uint64_t>(m.m_deg) >= t;
            if (tree.high) ++high_count;
            parts.emplace(v, std::move(tree));

            if (parts.at(v).high &&
                static_cast<double>(high_count) >=
                    th.high_part_ratio() * static_cast<double>(inst.modulator.size())) {
                std::vector<PartTree> snapshot;
                for (const auto& [root, tr] : parts) snapshot.push_back(tr);
                auto bm = extract_biclique_minor(inst, snapshot, t, th);
                if (bm) {
                    PartitionOutcome out;
                    out.kind = PartitionOutcome::Kind::Minor;
                    out.minor = std::move(*bm);
                    return out;
                }
                th.p3_boost *= 2.0;
                if (stats) ++stats->extraction_failures;
                log_msg(1, "biclique-minor extraction failed, raising the high-tree threshold");
            }
        }
    }

    PartitionOutcome out;
    out.kind = PartitionOutcome::Kind::Partition;
    out.partition.t = t;
    for (auto& [root, tr] : parts) out.partition.trees.push_back(std::move(tr));
    return out;
}

/// Roots of high trees (Z1) and the forest vertices with three edge-disjoint
/// forest paths to distinct Z1 vertices (Z2).
inline std::pair<VertexSet, VertexSet> compute_core_sets(const Instance& inst,
                                                         const UniformPartition& up) {
    VertexSet z1;
    for (const PartTree& tr : up.trees)
        if (tr.high) z1.insert(tr.root);

    VertexSet z2;
    const RootedForest rf = root_forest(inst);
    const Graph forest = inst.forest();
    // per component: count z1 vertices in each downward subtree
    std::map<VertexId, int> down;
    std::map<VertexId, int> comp_total;
    for (VertexId root : rf.roots) {
        // post-order accumulation
        std::vector<VertexId> order, stack{root};
        while (!stack.empty()) {
            VertexId x = stack.back();
            stack.pop_back();
            order.push_back(x);
            auto it = rf.children.find(x);
            if (it != rf.children.end())
                for (VertexId c : it->second) stack.push_back(c);
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int c = z1.count(*it) ? 1 : 0;
            auto ch = rf.children.find(*it);
            if (ch != rf.children.end())
                for (VertexId u : ch->second) c += down[u];
            down[*it] = c;
        }
        for (VertexId v : order) comp_total[v] = down[root];
    }
    for (VertexId v : forest.vertices()) {
        int branches = comp_total[v] - down[v] >= 1 ? 1 : 0; // toward the parent side
        auto ch = rf.children.find(v);
        if (ch != rf.children.end())
            for (VertexId u : ch->second)
                if (down[u] >= 1) ++branches;
        if (branches >= 3) z2.insert(v);
    }
    return {z1, z2};
}

/// Last kernelization attempt before the dynamic program: extend the
/// modulator by the core sets and try drop_clone_tree, then take_hub on the
/// components of the extended instance. Children revert to the original
/// modulator. Returns nothing when the instance is ready for the DP.
inline std::optional<RuleOutcome> finalize_with_core(const Instance& inst,
                                                     const UniformPartition& up, std::uint64_t t,
                                                     const Thresholds& th,
                                                     SolveStats* stats = nullptr) {
    const auto [z1, z2] = compute_core_sets(inst, up);
    Instance ext = inst;
    ext.modulator = set_union(inst.modulator, set_union(z1, z2));

    if (auto cert = find_clone_trees(ext)) {
        RuleOutcome out = apply_drop_clone_tree(ext, *cert);
        out.children[0].modulator = inst.modulator;
        return out;
    }
    const Graph remainder = ext.forest();
    for (const auto& comp : components(remainder)) {
        if (auto cert = find_hub(ext, to_set(comp))) {
            RuleOutcome out = apply_take_hub(ext, *cert);
            if (!out.trivially_no) {
                out.children[0].modulator = inst.modulator;
                out.children[0].modulator.erase(cert->hub);
            }
            return out;
        }
    }

    // leaf-size diagnostics, asymptotic bounds logged rather than enforced
    const double p4 = th.component_ratio();
    if (static_cast<double>(remainder.order()) >
        p4 * static_cast<double>(ext.modulator.size())) {
        if (stats) ++stats->leaf_bound_violations;
        log_msg(1, "component bound exceeded at the DP leaf");
    }
    for (const auto& comp : components(remainder)) {
        const VertexSet nm = modulator_neighbors(ext, to_set(comp));
        if (nm.size() > 2 * t + 2)
            throw internal_error("finalize_with_core: component degree above 2t+2");
    }
    return std::nullopt;
}

} // namespace subfvs
