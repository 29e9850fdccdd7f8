#pragma once

#include "subfvs/ann.hpp"
#include "subfvs/params.hpp"
#include "subfvs/partition.hpp"
#include "subfvs/preprocess.hpp"
#include "subfvs/rules.hpp"
#include "subfvs/stats.hpp"
#include "subfvs/treewidth.hpp"

#include <chrono>
#include <future>
#include <optional>

namespace subfvs {

struct timeout_error : std::runtime_error {
    timeout_error() : std::runtime_error("solve: deadline exceeded") {}
};

struct SolveOptions {
    int jobs = 1;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SolveResult {
    std::optional<VertexSet> solution;
    SolveStats stats;
    Thresholds thresholds;
};

namespace detail {

struct Driver {
    Thresholds& th;
    SolveStats& stats;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    std::optional<VertexSet> run(const Instance& inst, int depth) {
        if (deadline && std::chrono::steady_clock::now() > *deadline) throw timeout_error();
        stats.depth = std::max(stats.depth, depth);
        stats.max_modulator =
            std::max(stats.max_modulator, static_cast<long>(inst.modulator.size()));
        if (static_cast<double>(inst.modulator.size()) > th.modulator_bound()) {
            ++stats.modulator_bound_violations;
            log_msg(1, "modulator grew past its monitored bound");
        }
        if (inst.must_hit.size() > static_cast<std::size_t>(inst.k)) return std::nullopt;

        // kernelization rules, first applicable one wins
        if (auto out = apply_prune_leaf(inst)) return descend(inst, *out, depth);
        if (auto out = apply_smooth_path(inst)) return descend(inst, *out, depth);
        if (auto out = apply_absorb_high_degree(inst, th.t)) return descend(inst, *out, depth);
        if (auto cert = find_clone_trees(inst))
            return descend(inst, apply_drop_clone_tree(inst, *cert), depth);

        VertexSet waived;
        while (true) {
            PartitionOutcome part = partition_trees(inst, th.t, th, waived, &stats);
            switch (part.kind) {
                case PartitionOutcome::Kind::OversizedTree: {
                    if (auto cert = find_hub(inst, part.oversized))
                        return descend(inst, apply_take_hub(inst, *cert), depth);
                    // constants were too small for the constructive path
                    // search; accept the tree and keep partitioning
                    waived.insert(part.oversized_root);
                    ++stats.size_waivers;
                    log_msg(1, "size bound waived for an oversized tree");
                    continue;
                }
                case PartitionOutcome::Kind::Minor: {
                    return descend(
                        inst,
                        apply_branch_virtual_biclique(inst, part.minor, th.t,
                                                      th.minor_tree_size_bound()),
                        depth);
                }
                case PartitionOutcome::Kind::Partition: {
                    if (log_level() >= 3)
                        log_msg(3, "partition:\n" + dump_partition(inst, part.partition));
                    if (auto out = finalize_with_core(inst, part.partition, th.t, th, &stats))
                        return descend(inst, *out, depth);
                    return dp_leaf(inst);
                }
            }
        }
    }

    std::optional<VertexSet> descend(const Instance& parent, const RuleOutcome& out, int depth) {
        if (out.trivially_no) {
            ++stats.rule_fires[out.rule];
            return std::nullopt;
        }
        const ProgressMeasure pm = measure_of(parent);
        for (const Instance& child : out.children) {
            validate_instance(child);
            stats.record_transition(out.rule, pm, measure_of(child));
        }
        for (std::size_t i = 0; i < out.children.size(); ++i) {
            auto sub = run(out.children[i], depth + 1);
            if (!sub) continue;
            VertexSet lifted = out.lifts[i](*sub);
            verify_solution(parent, lifted);
            return lifted;
        }
        return std::nullopt;
    }

    std::optional<VertexSet> dp_leaf(const Instance& inst) {
        ++stats.dp_leaves;
        stats.dp_leaf_n = std::max(stats.dp_leaf_n, static_cast<long>(inst.g.order()));
        const double leaf_cap = static_cast<double>(th.k0) * th.leaf_size_ratio();
        if (static_cast<double>(inst.g.order()) > leaf_cap) {
            ++stats.leaf_bound_violations;
            log_msg(1, "leaf size grew past its monitored bound");
        }
        const TreeDecomposition td = decompose(inst.g);
        stats.width = std::max(stats.width, td.width());
        auto sol = dp_annotated_fvs(inst, td);
        if (sol) verify_solution(inst, *sol);
        return sol;
    }
};

inline std::optional<VertexSet> solve_member(const FamilyMember& member, Thresholds& th,
                                             SolveStats& stats,
                                             const std::optional<std::chrono::steady_clock::time_point>& deadline) {
    Instance inst;
    inst.g = member.g;
    inst.k = member.k;
    inst.modulator = member.modulator;
    validate_instance(inst);
    Driver driver{th, stats, deadline};
    auto sol = driver.run(inst, 0);
    if (!sol) return std::nullopt;
    return set_union(*sol, member.lift);
}

} // namespace detail

/// End-to-end solve: bootstrap approximation and preliminary branching,
/// then the recursive algorithm on every family member; the first member
/// solution is lifted back and verified against the input graph.
inline SolveResult solve(const Graph& g0, int k0, const NiceClassParams& params,
                         const SolveOptions& options = {}) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult res;
    res.thresholds = derive_thresholds(params, static_cast<std::uint64_t>(std::max(k0, 1)));

    FamilyResult fam = build_instance_family(g0, k0, static_cast<int>(res.thresholds.r),
                                             &res.stats);
    switch (fam.kind) {
        case FamilyResult::Kind::Yes:
            if (!is_fvs(g0, fam.certificate) || static_cast<int>(fam.certificate.size()) > k0)
                throw internal_error("bootstrap produced a bad certificate");
            res.solution = fam.certificate;
            break;
        case FamilyResult::Kind::No:
            break;
        case FamilyResult::Kind::Family: {
            if (options.jobs > 1) {
                std::vector<std::future<std::pair<std::optional<VertexSet>, SolveStats>>> futs;
                for (const FamilyMember& member : fam.members) {
                    futs.push_back(std::async(std::launch::async, [&member, &res, &options]() {
                        Thresholds th = res.thresholds;
                        SolveStats st;
                        auto sol = detail::solve_member(member, th, st, options.deadline);
                        return std::make_pair(sol, st);
                    }));
                }
                for (auto& f : futs) {
                    auto [sol, st] = f.get();
                    res.stats.merge(st);
                    if (sol && !res.solution) res.solution = sol;
                }
            } else {
                for (const FamilyMember& member : fam.members) {
                    auto sol = detail::solve_member(member, res.thresholds, res.stats,
                                                    options.deadline);
                    if (sol) {
                        res.solution = sol;
                        break;
                    }
                }
            }
            break;
        }
    }
    if (res.solution) {
        if (!is_fvs(g0, *res.solution) || static_cast<int>(res.solution->size()) > k0)
            throw internal_error("solve produced a bad certificate");
    }
    res.stats.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return res;
}

/// Direct route without the subexponential machinery: decompose and run the
/// dynamic program. Correct on any graph.
inline SolveResult solve_dp_only(const Graph& g0, int k0) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult res;
    res.thresholds = derive_thresholds(pseudo_disk_params(), static_cast<std::uint64_t>(std::max(k0, 1)));
    Instance inst;
    inst.g = g0;
    inst.k = k0;
    for (VertexId v : g0.vertices()) inst.modulator.insert(v); // trivially a FVS
    const TreeDecomposition td = decompose(g0);
    res.stats.width = td.width();
    res.stats.dp_leaves = 1;
    res.stats.dp_leaf_n = static_cast<long>(g0.order());
    res.solution = dp_annotated_fvs(inst, td);
    res.stats.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return res;
}

} // namespace subfvs
