#pragma once

#include "subfvs/rat.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace subfvs {

/// Parameters of a "nice" graph class. The exponents describe the growth of
/// the four class functions,
///   f1(r)      ~ lead_f1  * r^f1_exp        (trace count, |A|^alpha regime)
///   f2(r,p,m)  ~ lead_f2  * r^f2_exp * (p+m)^f2_size_exp
///   tau(r)     ~ lead_tau * r^tau_exp       (treewidth coefficient)
///   dens(r)    ~ lead_dens* r^dens_exp      (edge density bound)
/// and delta < 1 is the treewidth exponent in n. A log flag multiplies the
/// corresponding function by (1 + log2 r); hidden logarithmic factors are
/// realized that way.
struct NiceClassParams {
    std::string name = "custom";
    int alpha = 0;
    Rat delta{0};
    Rat tau_exp{0};
    Rat dens_exp{0};
    Rat f1_exp{0};
    Rat f2_exp{0};
    Rat f2_size_exp{0};
    double lead_tau = 1.0;
    double lead_dens = 1.0;
    double lead_f1 = 1.0;
    double lead_f2 = 1.0;
    bool log_tau = false;
    bool log_dens = false;
    bool log_f1 = false;
    bool log_f2 = false;
    // Value reported elsewhere for this class, when one exists. Stats flag
    // it as unreconciled if it disagrees with the computed eta.
    std::optional<Rat> claimed_eta;
};

inline NiceClassParams pseudo_disk_params() {
    NiceClassParams p;
    p.name = "pseudo-disk";
    p.alpha = 4;
    p.delta = Rat(1, 2);
    p.tau_exp = Rat(1, 2);
    p.dens_exp = Rat(1);
    p.f1_exp = Rat(0);
    p.f2_exp = Rat(0);
    p.f2_size_exp = Rat(3);
    p.log_tau = true;
    p.log_dens = true;
    p.claimed_eta = Rat(44, 45);
    return p;
}

inline NiceClassParams s_string_params(int s) {
    if (s < 1) throw input_error("s-string preset needs s >= 1");
    NiceClassParams p;
    p.name = "s-string(" + std::to_string(s) + ")";
    p.alpha = 4;
    p.delta = Rat(1, 2);
    p.tau_exp = Rat(1, 2);
    p.dens_exp = Rat(1);
    p.f1_exp = Rat(1);
    p.f2_exp = Rat(4);
    p.f2_size_exp = Rat(3);
    const double s4 = std::pow(static_cast<double>(s), 4.0);
    p.lead_f1 = s4;
    p.lead_f2 = s4;
    p.log_tau = true;
    p.log_dens = true;
    p.log_f1 = true;
    p.log_f2 = true;
    p.claimed_eta = Rat(52, 53);
    return p;
}

/// All instance-independent numbers the solver consumes: the branching
/// parameters r and t, the exact exponents, and the polynomial size bounds.
struct Thresholds {
    NiceClassParams params;
    std::uint64_t k0 = 0;
    std::uint64_t r = 2;
    std::uint64_t t = 2;
    Rat poly_exp{0};    // aggregate exponent driving epsilon
    Rat epsilon{0};
    Rat eta{1};
    double c1 = 16.0;   // leading constant of the subtree size bound
    double p3_boost = 1.0; // doubled when a biclique-minor extraction fails

    double log_mult() const {
        return 1.0 + std::log2(static_cast<double>(r));
    }
    double f1() const {
        double v = params.lead_f1 * std::pow(static_cast<double>(r), params.f1_exp.to_double());
        if (params.log_f1) v *= log_mult();
        return v;
    }
    double f2(double p, double m) const {
        double v = params.lead_f2 * std::pow(static_cast<double>(r), params.f2_exp.to_double());
        v *= std::pow(p + m, params.f2_size_exp.to_double());
        if (params.log_f2) v *= log_mult();
        return v;
    }
    double tau() const {
        double v = params.lead_tau * std::pow(static_cast<double>(r), params.tau_exp.to_double());
        if (params.log_tau) v *= log_mult();
        return v;
    }

    /// Subtree size cap as a function of the degree/border measure.
    double tree_size_bound(double db) const {
        return c1 * f1() * std::pow(db, 6.0 + params.alpha);
    }
    /// Size cap of the trees in a biclique-minor certificate.
    double minor_tree_size_bound() const { return tree_size_bound(2.0 * static_cast<double>(t)); }
    /// High-degree part count per modulator vertex before extraction fires.
    double high_part_ratio() const {
        const double td = static_cast<double>(t);
        return 4.0 * td * f2(2.0 * td, minor_tree_size_bound()) * p3_boost;
    }
    /// Component count per extended-modulator vertex at the DP leaf.
    double component_ratio() const {
        const double td = static_cast<double>(t);
        return (2.0 * td + 4.0) * f2(2.0 * td + 2.0, tree_size_bound(2.0 * td + 2.0));
    }
    double leaf_size_ratio() const {
        return minor_tree_size_bound() * high_part_ratio() * component_ratio();
    }
    /// Modulator size cap monitored during the recursion.
    double modulator_bound() const {
        return 4.0 * static_cast<double>(k0) + 2.0 * static_cast<double>(k0) * minor_tree_size_bound();
    }
    /// Exponent scale of the DP leaf cost (reporting only).
    double dp_exponent_scale() const {
        const double p6 = leaf_size_ratio();
        const double tv = tau();
        return tv * std::log2(tv * static_cast<double>(k0) * p6) *
               std::pow(p6, params.delta.to_double());
    }
};

/// Density function d(r), floored at r.
inline std::uint64_t density_bound(const NiceClassParams& p, std::uint64_t r) {
    double v = p.lead_dens * std::pow(static_cast<double>(r), p.dens_exp.to_double());
    if (p.log_dens) v *= 1.0 + std::log2(static_cast<double>(r));
    const double c = std::ceil(v);
    std::uint64_t d = c < 1.0 ? 1 : static_cast<std::uint64_t>(c);
    return std::max<std::uint64_t>(d, r);
}

/// Evaluates the exponent aggregate, epsilon and eta exactly, then derives
/// r = max(2, ceil(k0^epsilon)) and t = 2 d(r).
inline Thresholds derive_thresholds(const NiceClassParams& params, std::uint64_t k0) {
    if (!(params.delta < Rat(1))) throw input_error("nice-class delta must be < 1");
    Thresholds th;
    th.params = params;
    th.k0 = k0;

    const Rat six_alpha(6 + params.alpha);
    th.poly_exp = params.tau_exp +
                  params.delta * (Rat(2) * (params.dens_exp + params.f2_exp) +
                                  (params.f2_size_exp + Rat(1)) * (params.f1_exp + six_alpha));
    th.epsilon = (Rat(1) - params.delta) / (th.poly_exp + Rat(1));
    th.eta = Rat(1) - th.epsilon;

    th.r = std::max<std::uint64_t>(2, ceil_pow(std::max<std::uint64_t>(k0, 1), th.epsilon));
    th.t = 2 * density_bound(params, th.r);
    return th;
}

} // namespace subfvs
