#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subfvs/params.hpp"

using namespace subfvs;

TEST_CASE("rational arithmetic stays normalized") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
    CHECK((Rat(1) - Rat(1, 45)) == Rat(44, 45));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(1, -2).str() == "-1/2");
    CHECK(parse_rat("43/2") == Rat(43, 2));
    CHECK(parse_rat("7") == Rat(7));
    CHECK_THROWS_AS(parse_rat("x/y"), input_error);
}

TEST_CASE("exact ceil of rational powers") {
    CHECK(ceil_pow(100, Rat(1, 2)) == 10);   // sqrt(100)
    CHECK(ceil_pow(101, Rat(1, 2)) == 11);
    CHECK(ceil_pow(8, Rat(1, 3)) == 2);
    CHECK(ceil_pow(9, Rat(1, 3)) == 3);      // 2^3 < 9
    CHECK(ceil_pow(1000000, Rat(1, 45)) == 2);
    CHECK(ceil_pow(1, Rat(3, 7)) == 1);
    CHECK(ceil_pow(35184372088832ULL, Rat(1, 45)) == 2); // 2^45
    CHECK(ceil_pow(35184372088833ULL, Rat(1, 45)) == 3);
}

TEST_CASE("pseudo-disk preset reproduces the published exponents") {
    const auto th = derive_thresholds(pseudo_disk_params(), 40);
    CHECK(th.poly_exp == Rat(43, 2)); // 21.5
    CHECK(th.epsilon == Rat(1, 45));
    CHECK(th.eta == Rat(44, 45));
    CHECK(th.r == 2);
    // d(2) = max(2, ceil(2 * (1 + log2 2))) = 4, so t = 8
    CHECK(th.t == 8);
    REQUIRE(th.params.claimed_eta.has_value());
    CHECK(*th.params.claimed_eta == th.eta);
}

TEST_CASE("s-string preset: computed eta disagrees with the published claim") {
    const auto th = derive_thresholds(s_string_params(1), 40);
    CHECK(th.poly_exp == Rat(55, 2)); // 27.5
    CHECK(th.epsilon == Rat(1, 57));
    CHECK(th.eta == Rat(56, 57));
    REQUIRE(th.params.claimed_eta.has_value());
    CHECK(*th.params.claimed_eta == Rat(52, 53));
    CHECK_FALSE(*th.params.claimed_eta == th.eta); // documented discrepancy

    // s scales only leading constants, never the exponents
    const auto th3 = derive_thresholds(s_string_params(3), 40);
    CHECK(th3.eta == th.eta);
    CHECK(th3.f1() > th.f1());
}

TEST_CASE("degenerate parameters evaluate directly") {
    NiceClassParams p;
    p.delta = Rat(0);
    p.tau_exp = Rat(3);
    const auto th = derive_thresholds(p, 10);
    CHECK(th.poly_exp == Rat(3));      // c7 = tau exponent when delta = 0
    CHECK(th.epsilon == Rat(1, 4));    // (1-0)/(3+1)
    CHECK(th.eta == Rat(3, 4));
    CHECK(th.r == 2);                  // ceil(10^(1/4)) = 2
}

TEST_CASE("threshold evaluators are monotone and positive") {
    auto th = derive_thresholds(pseudo_disk_params(), 20);
    CHECK(th.tree_size_bound(1.0) > 0);
    CHECK(th.tree_size_bound(4.0) > th.tree_size_bound(2.0));
    CHECK(th.minor_tree_size_bound() == th.tree_size_bound(2.0 * static_cast<double>(th.t)));
    CHECK(th.high_part_ratio() > 0);
    CHECK(th.component_ratio() > 0);
    CHECK(th.leaf_size_ratio() > 0);
    const double base = th.high_part_ratio();
    th.p3_boost = 2.0;
    CHECK(th.high_part_ratio() == doctest::Approx(2.0 * base));
}

TEST_CASE("density bound is floored at r") {
    NiceClassParams p;
    p.delta = Rat(1, 2);
    p.dens_exp = Rat(0);
    p.lead_dens = 0.001;
    CHECK(density_bound(p, 5) == 5);
    p.lead_dens = 3.0;
    CHECK(density_bound(p, 2) == 3);
}
