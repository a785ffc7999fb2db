#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "eulerlab/residuals.hpp"
#include "eulerlab/solutions.hpp"

using namespace eulerlab;

namespace {

const SolutionParams kCase1{0.0, 0.0, 0.0};
const SolutionParams kCase2{0.0, 2.0, 0.0};
const SolutionParams kCase3{1.0, 1.0, 1.0};
const SolutionParams kCase4{2.0, 1.0, 0.0};
const SolutionParams kCase5{3.0, 1.0, 0.0};

const SolutionParams kAllCases[] = {kCase1, kCase2, kCase3, kCase4, kCase5};

} // namespace

TEST_CASE("classify selects the unique family") {
    CHECK(classify({0.0, 0.0, 0.0}) == CaseTag::Case1);
    CHECK(classify({0.0, 2.0, 0.0}) == CaseTag::Case2);
    CHECK(classify({1.0, 5.0, 2.0}) == CaseTag::Case3);
    CHECK(classify({2.0, -3.0, 0.0}) == CaseTag::Case4);
    CHECK(classify({3.0, 1.0, 0.0}) == CaseTag::Case5);
    CHECK(classify({-1.0, 0.0, 0.0}) == CaseTag::Case5);
    CHECK(classify({0.5, 0.0, 0.0}) == CaseTag::Case5);
    CHECK_THROWS_AS(classify({std::nan(""), 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("temporal coefficients reproduce the closed forms") {
    SUBCASE("case 4 at t = 1") {
        const TemporalPair tc = temporal_coefficients(kCase4, 1.0);
        CHECK(tc.f == -1.0);
        CHECK(tc.g == 0.0); // -c2 ln 1
        CHECK(tc.fp == 1.0);
        CHECK(tc.gp == -1.0);
    }
    SUBCASE("case 5 with c2 = 0 at t = 1") {
        const TemporalPair tc = temporal_coefficients({3.0, 0.0, 0.0}, 1.0);
        CHECK(tc.f == doctest::Approx(-0.5).epsilon(1e-15));
        CHECK(tc.g == doctest::Approx(1.0).epsilon(1e-15)); // t^(-1/2) at t = 1
    }
    SUBCASE("case 2 at t = 1 satisfies the temporal system") {
        const TemporalPair tc = temporal_coefficients(kCase2, 1.0);
        CHECK(tc.f == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(tc.g == doctest::Approx(2.0).epsilon(1e-15)); // 1/t^2 + c2/2
        const auto [rf, rg] = ode_residual_fg(kCase2, tc);
        CHECK(std::abs(rf) < 1e-12);
        CHECK(std::abs(rg) < 1e-12);
    }
    SUBCASE("pole at t = 0") {
        CHECK_THROWS_AS(temporal_coefficients(kCase4, 0.0), DomainError);
        CHECK_THROWS_AS(temporal_coefficients(kCase1, -1.0), DomainError);
        CHECK_NOTHROW(temporal_coefficients(kCase3, -1.0)); // case 3 has no pole
    }
}

TEST_CASE("temporal pair satisfies its ODE system at random times") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(0.3, 3.0);
    for (const SolutionParams& params : kAllCases) {
        for (int k = 0; k < 50; ++k) {
            const double t = ut(rng);
            const TemporalPair tc = temporal_coefficients(params, t);
            const auto [rf, rg] = ode_residual_fg(params, tc);
            const double scale_f = std::max(1.0, std::abs(tc.fp));
            const double scale_g = std::max(1.0, std::abs(tc.gp));
            CHECK(std::abs(rf) <= 1e-12 * scale_f);
            CHECK(std::abs(rg) <= 1e-12 * scale_g);
        }
    }
}

TEST_CASE("profile closed forms") {
    SUBCASE("square-root profile") {
        const ReducedProfile prof = profile({2.0, 0.0, 0.0}, 2.0);
        CHECK(prof.W == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(prof.Q == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
        CHECK(prof.Wp == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-14));
    }
    SUBCASE("exponential profile") {
        const ReducedProfile prof = profile({0.0, 1.0, 0.0}, 0.0);
        CHECK(prof.W == 1.0);
        CHECK(prof.Q == -1.0);
        CHECK(prof.Wp == 1.0);
        CHECK(prof.Qp == -1.0);
    }
    SUBCASE("trivial profile") {
        const ReducedProfile prof = profile(kCase1, 7.0);
        CHECK(prof.W == 0.0);
        CHECK(prof.Q == 0.0);
    }
    SUBCASE("linear profile accepts any base sign") {
        const ReducedProfile prof = profile({1.0, -4.0, 1.0}, -2.0); // W = z + c2 = -6
        CHECK(prof.W == -6.0);
        CHECK(prof.Wp == 1.0);
    }
    SUBCASE("fractional exponent rejects non-positive bases and names z") {
        CHECK_THROWS_WITH_AS(profile({2.0, 0.0, 0.0}, -1.0),
                             doctest::Contains("z = -1.0"), DomainError);
        CHECK_THROWS_AS(profile({2.0, 0.0, 0.0}, 0.0), DomainError);
    }
}

TEST_CASE("profile satisfies (c1 z + c2) W' = W and the antisymmetry Q = -W") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uz(0.2, 4.0);
    const SolutionParams nontrivial[] = {kCase2, kCase3, kCase4, kCase5, {0.5, 1.0, 0.0}};
    for (const SolutionParams& params : nontrivial) {
        for (int k = 0; k < 50; ++k) {
            const double z = uz(rng);
            const ReducedProfile prof = profile(params, z);
            CHECK(std::abs(prof.W + prof.Q) < 1e-12 * std::max(1.0, std::abs(prof.W)));
            const double lhs = (params.c1 * z + params.c2) * prof.Wp;
            CHECK(lhs == doctest::Approx(prof.W).epsilon(1e-12));
        }
    }
}

TEST_CASE("profile amplitude scales the whole family and keeps the ODE") {
    const SolutionParams params{2.0, 0.0, 0.0};
    const ReducedProfile unit = profile(params, 2.0);
    const ReducedProfile twice = profile(params, 2.0, 2.0);
    CHECK(twice.W == doctest::Approx(2.0 * unit.W).epsilon(1e-15));
    CHECK(twice.Wp == doctest::Approx(2.0 * unit.Wp).epsilon(1e-15));
    const auto res = ode_residual_WQ(params, 2.0, twice);
    for (double r : res)
        CHECK(std::abs(r) < 1e-12);
}

TEST_CASE("similarity coordinate") {
    CHECK(similarity_z({1.0, 0.0, 1.0, 0.0}, 1.0, 1.0) == 3.0);
    CHECK(similarity_z({0.0, 0.0, 4.5, 0.0}, 100.0, -3.0) == 4.5); // f = 0 degenerate
    const TemporalPair tc = temporal_coefficients(kCase4, 1.0);
    CHECK(similarity_z(tc, 1.0, 0.0) == -1.0);
}

TEST_CASE("reduction map spec points") {
    SUBCASE("case 1 at (2, 1, 1)") {
        const FlowState s = evaluate_case(kCase1, 2.0, 1.0, 1.0);
        CHECK(s.u1 == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(s.u2 == doctest::Approx(3.0).epsilon(1e-14));
        CHECK(s.p == doctest::Approx(2.5).epsilon(1e-14));
        CHECK(s.div == 0.0);
    }
    SUBCASE("case 3 with c2 = 0, c3 = 1 at the origin, t = 0") {
        const FlowState s = evaluate_case({1.0, 0.0, 1.0}, 0.0, 0.0, 0.0);
        CHECK(s.u1 == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(s.u2 == doctest::Approx(0.0));
        CHECK(s.p == doctest::Approx(0.0));
    }
    SUBCASE("case 2 with c2 = 2 at the origin, t = 1") {
        const FlowState s = evaluate_case(kCase2, 0.0, 0.0, 1.0);
        CHECK(s.z == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(s.u1 == doctest::Approx(2.0 + std::exp(1.0)).epsilon(1e-14));
        CHECK(s.u2 == doctest::Approx(2.0 - std::exp(1.0)).epsilon(1e-14));
    }
    SUBCASE("case 4 with c2 = 0 at (-1, -1, 1)") {
        const FlowState s = evaluate_case({2.0, 0.0, 0.0}, -1.0, -1.0, 1.0);
        CHECK(s.z == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(s.u1 == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
        CHECK(s.u2 == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-14));
        CHECK(s.p == doctest::Approx(-2.0).epsilon(1e-14));
    }
}

TEST_CASE("pointwise identities on random admissible points") {
    for (const SolutionParams& params : kAllCases) {
        const SampleBox box = default_sample_box(classify(params));
        for (const auto& pt : random_admissible_points(params, box, 60, 23)) {
            const FlowState s = evaluate_case(params, pt[0], pt[1], pt[2]);
            const TemporalPair tc = temporal_coefficients(params, pt[2]);

            // analytic divergence vanishes
            CHECK(std::abs(s.div) < 1e-11);

            // u1 + u2 = f (x + y) + 2 g
            const double lin = tc.f * (pt[0] + pt[1]) + 2.0 * tc.g;
            CHECK(s.u1 + s.u2 == doctest::Approx(lin).epsilon(1e-11));

            // pressure is symmetric in x and y
            const FlowState sw = evaluate_case(params, pt[1], pt[0], pt[2]);
            CHECK(s.p == doctest::Approx(sw.p).epsilon(1e-12));
        }
    }
}

TEST_CASE("tabulated formulas match the composition for cases 1-4") {
    const SolutionParams sets[] = {kCase1, kCase2, kCase3, kCase4};
    for (const SolutionParams& params : sets) {
        const SampleBox box = default_sample_box(classify(params));
        for (const auto& pt : random_admissible_points(params, box, 40, 31)) {
            const FlowState a = evaluate_case(params, pt[0], pt[1], pt[2]);
            const FlowState b = tabulated_solution(params, pt[0], pt[1], pt[2]);
            CHECK(std::abs(a.u1 - b.u1) < 1e-12 * std::max(1.0, std::abs(a.u1)));
            CHECK(std::abs(a.u2 - b.u2) < 1e-12 * std::max(1.0, std::abs(a.u2)));
            CHECK(std::abs(a.p - b.p) < 1e-12 * std::max(1.0, std::abs(a.p)));
        }
    }
}

TEST_CASE("tabulated case 5 disagrees with the composition while the composition "
          "solves the equations") {
    // both the tabulated brackets and the composed base stay positive here
    SampleLattice lattice{-0.3, 0.3, 7, -0.3, 0.3, 7, {0.9, 1.0, 1.1}};
    const TabulatedDiff diff = tabulated_diff(kCase5, lattice);
    CHECK(diff.points > 100);
    CHECK(diff.max_du1 > 1e-6);
    CHECK(diff.max_du2 > 1e-6);
    CHECK(diff.max_dp > 1e-6);

    const NormReport report = residual_norms(kCase5, lattice);
    CHECK(report.skipped == 0);
    CHECK(report.max_abs < 1e-10);
}

TEST_CASE("tabulated diff is clean for case 1") {
    SampleLattice lattice{-1.0, 1.0, 5, -1.0, 1.0, 5, {1.0, 2.0}};
    const TabulatedDiff diff = tabulated_diff(kCase1, lattice);
    CHECK(diff.points == lattice.points());
    CHECK(diff.max_abs() < 1e-12);
}

TEST_CASE("evaluation domain") {
    const EvalDomain domain;
    CHECK(domain.admissible(kCase1, 0.0, 0.0, 1.0));
    CHECK_FALSE(domain.admissible(kCase1, 0.0, 0.0, 0.0));
    CHECK_FALSE(domain.admissible(kCase4, 0.0, 0.0, -1.0));
    CHECK(domain.admissible(kCase3, 0.0, 0.0, -5.0)); // case 3 allows any t

    // bracket sign decides admissibility for the square-root profile
    CHECK(domain.admissible(kCase4, -1.0, -1.0, 1.0));       // base = 2.5
    CHECK_FALSE(domain.admissible(kCase4, 1.0, 1.0, 1.0));   // base = -1.5

    EvalDomain bounded;
    bounded.x_min = 0.0;
    CHECK_FALSE(bounded.admissible(kCase1, -0.5, 0.0, 1.0));

    EvalDomain margined;
    margined.margin = 0.1;
    CHECK_FALSE(margined.admissible(kCase4, -0.303, -0.25, 2.0)); // base barely positive
}

TEST_CASE("case catalogue lists the five families") {
    const auto catalog = case_catalog();
    CHECK(catalog.size() == 5);
    CHECK(catalog[0].tag == CaseTag::Case1);
    CHECK(std::string(catalog[4].constraint).find("not in") != std::string::npos);
}
