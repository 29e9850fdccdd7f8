#pragma once

#include "subfvs/ann.hpp"
#include "subfvs/errors.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

namespace subfvs {

// Stderr logger, level picked from SUBEXP_FVS_LOG (error|warn|info|debug).
inline int log_level() {
    static const int level = [] {
        const char* env = std::getenv("SUBEXP_FVS_LOG");
        if (!env) return 1;
        const std::string s(env);
        if (s == "error") return 0;
        if (s == "warn") return 1;
        if (s == "info") return 2;
        if (s == "debug") return 3;
        return 1;
    }();
    return level;
}

inline void log_msg(int level, const std::string& msg) {
    static const char* names[] = {"error", "warn", "info", "debug"};
    if (level <= log_level()) std::cerr << "[fvs:" << names[level] << "] " << msg << '\n';
}

/// Lexicographic progress measure (2k - |H|, |V \ M|, |V|); every rule
/// application must strictly decrease it.
struct ProgressMeasure {
    long budget_slack = 0;
    long outside_modulator = 0;
    long total = 0;

    friend bool operator<(const ProgressMeasure& a, const ProgressMeasure& b) {
        if (a.budget_slack != b.budget_slack) return a.budget_slack < b.budget_slack;
        if (a.outside_modulator != b.outside_modulator)
            return a.outside_modulator < b.outside_modulator;
        return a.total < b.total;
    }
};

inline ProgressMeasure measure_of(const Instance& inst) {
    ProgressMeasure m;
    m.budget_slack = 2L * inst.k - static_cast<long>(inst.must_hit.size());
    m.total = static_cast<long>(inst.g.order());
    m.outside_modulator = m.total - static_cast<long>(inst.modulator.size());
    return m;
}

struct SolveStats {
    std::map<std::string, long> rule_fires;
    long transitions = 0;
    int depth = 0;
    long max_modulator = 0;
    long dp_leaf_n = 0;
    int dp_leaves = 0;
    int width = 0;
    long millis = 0;
    long extraction_failures = 0;
    long size_waivers = 0;
    long modulator_bound_violations = 0;
    long leaf_bound_violations = 0;

    void record_transition(const std::string& rule, const ProgressMeasure& parent,
                           const ProgressMeasure& child) {
        ++rule_fires[rule];
        ++transitions;
        if (!(child < parent))
            throw internal_error("progress measure did not decrease under rule " + rule);
    }

    void merge(const SolveStats& o) {
        for (const auto& [k, v] : o.rule_fires) rule_fires[k] += v;
        transitions += o.transitions;
        depth = std::max(depth, o.depth);
        max_modulator = std::max(max_modulator, o.max_modulator);
        dp_leaf_n = std::max(dp_leaf_n, o.dp_leaf_n);
        dp_leaves += o.dp_leaves;
        width = std::max(width, o.width);
        extraction_failures += o.extraction_failures;
        size_waivers += o.size_waivers;
        modulator_bound_violations += o.modulator_bound_violations;
        leaf_bound_violations += o.leaf_bound_violations;
    }
};

} // namespace subfvs
