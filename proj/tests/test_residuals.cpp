#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "eulerlab/residuals.hpp"

using namespace eulerlab;

namespace {

const SolutionParams kCase1{0.0, 0.0, 0.0};
const SolutionParams kCase2{0.0, 2.0, 0.0};
const SolutionParams kCase3{1.0, 1.0, 1.0};
const SolutionParams kCase4{2.0, 1.0, 0.0};
const SolutionParams kCase5{3.0, 1.0, 0.0};

const SolutionParams kAllCases[] = {kCase1, kCase2, kCase3, kCase4, kCase5};

} // namespace

TEST_CASE("analytic Euler residual vanishes on exact solutions") {
    const EulerResidual r1 = euler_residual(kCase1, 2.0, 1.0, 1.0);
    CHECK(std::abs(r1.r_div) < 1e-11);
    CHECK(std::abs(r1.r_mx) < 1e-11);
    CHECK(std::abs(r1.r_my) < 1e-11);

    // case 3 admits t = 0
    const EulerResidual r3 = euler_residual({1.0, 0.0, 1.0}, 1.0, 1.0, 0.0);
    CHECK(r3.max_abs() < 1e-11);
}

TEST_CASE("a linear perturbation shows up exactly in the continuity residual") {
    const FlowField base = case_field(kCase1);
    const FlowField perturbed = [base](const Jet1& x, const Jet1& y, const Jet1& t) {
        FlowJet f = base(x, y, t);
        f.u1 = f.u1 + 0.1 * x;
        return f;
    };
    const EulerResidual r = euler_residual(perturbed, 0.3, -0.2, 1.0);
    CHECK(r.r_div == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("residual norms over admissible lattices") {
    SUBCASE("case 4 on a bracket-positive lattice") {
        SampleLattice lattice{-1.0, -0.25, 21, -1.0, -0.25, 21, {1.0, 1.25, 1.5, 1.75, 2.0}};
        const NormReport rep = residual_norms(kCase4, lattice);
        CHECK(rep.skipped == 0);
        CHECK(rep.evaluated == lattice.points());
        CHECK(rep.max_abs < 1e-10);
        CHECK(rep.l2 <= rep.max_abs);
    }
    SUBCASE("case 2 on the same lattice shape") {
        SampleLattice lattice{-1.0, 0.0, 21, -1.0, 0.0, 21, {1.0, 1.25, 1.5, 1.75, 2.0}};
        const NormReport rep = residual_norms(kCase2, lattice);
        CHECK(rep.skipped == 0);
        CHECK(rep.max_abs < 1e-10);
    }
    SUBCASE("inadmissible points are counted when skipping is on") {
        // x, y up to 0 pushes the case 4 bracket negative at late times
        SampleLattice lattice{-1.0, 0.0, 21, -1.0, 0.0, 21, {1.0, 1.5, 2.0}};
        const NormReport rep = residual_norms(kCase4, lattice);
        CHECK(rep.skipped > 0);
        CHECK(rep.evaluated + rep.skipped == lattice.points());
        CHECK(rep.max_abs < 1e-10);
    }
}

TEST_CASE("finite-difference residuals agree with analytic ones") {
    for (const SolutionParams& params : kAllCases) {
        const SampleBox box = default_sample_box(classify(params));
        EvalDomain domain;
        domain.margin = 1e-3; // clearance for the stencil legs
        for (const auto& pt : random_admissible_points(params, box, 10, 99, domain)) {
            const EulerResidual a = euler_residual(params, pt[0], pt[1], pt[2]);
            const EulerResidual f = euler_residual(params, pt[0], pt[1], pt[2],
                                                   DerivMethod::FiniteDifference);
            const FlowState s = evaluate_case(params, pt[0], pt[1], pt[2]);
            const double scale =
                std::max({std::abs(s.u1), std::abs(s.u2), std::abs(s.p), 1.0});
            const double tol = std::max(1e-6, 1e-4 * scale);
            CHECK(std::abs(a.r_div - f.r_div) <= tol);
            CHECK(std::abs(a.r_mx - f.r_mx) <= tol);
            CHECK(std::abs(a.r_my - f.r_my) <= tol);
        }
    }
}

TEST_CASE("order-4 stencil residual shrinks about sixteenfold per step halving") {
    SampleLattice lattice{-0.5, 0.5, 5, -0.5, 0.5, 5, {1.0}};
    const NormReport coarse =
        residual_norms(kCase1, lattice, DerivMethod::FiniteDifference, {2e-2, 4});
    const NormReport fine =
        residual_norms(kCase1, lattice, DerivMethod::FiniteDifference, {1e-2, 4});
    CHECK(coarse.max_abs > 1e-9); // truncation must dominate roundoff here
    const double ratio = coarse.max_abs / fine.max_abs;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("temporal ODE residuals") {
    const TemporalPair closed = temporal_coefficients(kCase3, 0.5);
    const auto [rf, rg] = ode_residual_fg(kCase3, closed);
    CHECK(std::abs(rf) < 1e-12);
    CHECK(std::abs(rg) < 1e-12);

    CHECK(ode_residual_fg({1.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 0.0}).first == 0.0);
    CHECK(ode_residual_fg({1.0, 0.0, 0.0}, {1.0, 1.0, 0.0, 0.0}).first == 1.0);
}

TEST_CASE("profile ODE residuals") {
    SUBCASE("square-root closed form") {
        const double w = std::sqrt(2.0);
        const ReducedProfile prof{w, 1.0 / (2.0 * w), -w, -1.0 / (2.0 * w)};
        const auto res = ode_residual_WQ({2.0, 0.0, 0.0}, 2.0, prof);
        for (double r : res)
            CHECK(std::abs(r) < 1e-12);
    }
    SUBCASE("exponential closed form") {
        const ReducedProfile prof{1.0, 1.0, -1.0, -1.0};
        const auto res = ode_residual_WQ({0.0, 1.0, 0.0}, 0.0, prof);
        for (double r : res)
            CHECK(std::abs(r) < 1e-12);
    }
    SUBCASE("trivial profile") {
        const auto res = ode_residual_WQ(kCase1, 7.0, {0.0, 0.0, 0.0, 0.0});
        for (double r : res)
            CHECK(r == 0.0);
    }
}

TEST_CASE("perturbing one field raises the matching residual proportionally") {
    const double t = 1.3;
    for (const double eps : {1e-6, 1e-4, 1e-2}) {
        TemporalPair tc = temporal_coefficients(kCase4, t);
        tc.fp *= 1.0 + eps;
        const auto [rf, rg] = ode_residual_fg(kCase4, tc);
        CHECK(std::abs(rf) == doctest::Approx(std::abs(tc.fp) * eps / (1.0 + eps))
                                  .epsilon(1e-9));
        CHECK(std::abs(rg) < 1e-13);

        ReducedProfile prof = profile(kCase4, 1.0);
        prof.W *= 1.0 + eps;
        const auto res = ode_residual_WQ(kCase4, 1.0, prof);
        CHECK(std::abs(res[1]) > 0.1 * eps);
        CHECK(std::abs(res[1]) < 10.0 * eps);
    }
}

TEST_CASE("all eighteen constraints vanish") {
    SUBCASE("case 5 sample point from the spec") {
        const auto res = constraint_check(kCase5, 0.5, 0.5, 1.0);
        for (double r : res)
            CHECK(std::abs(r) < 1e-11);
    }
    SUBCASE("case 3 at (1, 0, 0)") {
        const auto res = constraint_check(kCase3, 1.0, 0.0, 0.0);
        CHECK(std::abs(res[11]) < 1e-12); // the Gamma12 relation
        for (double r : res)
            CHECK(std::abs(r) < 1e-12);
    }
    SUBCASE("200 random points per case") {
        for (const SolutionParams& params : kAllCases) {
            const SampleBox box = default_sample_box(classify(params));
            for (const auto& pt : random_admissible_points(params, box, 200, 77)) {
                const auto res = constraint_check(params, pt[0], pt[1], pt[2]);
                for (double r : res)
                    CHECK(std::abs(r) < 1e-10);
                const auto rel = constraint_check(params, pt[0], pt[1], pt[2], true);
                for (double r : rel)
                    CHECK(std::abs(r) < 1e-10);
            }
        }
    }
}

TEST_CASE("norm report bookkeeping finds the worst point") {
    // u1 = x^2/2, u2 = p = 0: r_div = x, r_mx = x^3/2, r_my = 0.
    const FlowField bump = [](const Jet1& x, const Jet1& y, const Jet1& t) {
        FlowJet f;
        f.u1 = 0.5 * (x * x);
        f.u2 = jet_const(0.0);
        f.p = jet_const(0.0) * y * t;
        f.z = jet_const(0.0);
        return f;
    };
    SampleLattice lattice{0.0, 2.0, 3, 0.0, 1.0, 2, {1.0}};
    const NormReport rep = residual_norms(bump, lattice);
    CHECK(rep.max_abs == doctest::Approx(4.0)); // x-momentum residual at x = 2
    CHECK(rep.worst_point[0] == 2.0);
    CHECK(rep.worst_component == 1);
    CHECK(rep.component_max[0] == doctest::Approx(2.0));
    // x in {0, 1, 2}, two rows each: sum of squares = 2 (1.25 + 20)
    CHECK(rep.l2 == doctest::Approx(std::sqrt(42.5 / 18.0)));
    CHECK(rep.l2 <= rep.max_abs);
    CHECK(rep.evaluated == 6);
}

TEST_CASE("random admissible sampling is deterministic in the seed") {
    const SampleBox box = default_sample_box(CaseTag::Case4);
    const auto a = random_admissible_points(kCase4, box, 20, 4242);
    const auto b = random_admissible_points(kCase4, box, 20, 4242);
    CHECK(a == b);
    const auto c = random_admissible_points(kCase4, box, 20, 4243);
    CHECK(a != c);
}
