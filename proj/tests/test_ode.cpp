#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "eulerlab/ode.hpp"

using namespace eulerlab;

namespace {

const SolutionParams kCase4{2.0, 1.0, 0.0};
const SolutionParams kCase5{3.0, 1.0, 0.0};

// Endpoint error of the f/g integration against the closed forms.
double fg_endpoint_error(const SolutionParams& params, double t0, double t1, double dt) {
    const TemporalPair start = temporal_coefficients(params, t0);
    const FgPaths paths = integrate_fg(params, t0, start.f, start.g, t1, {dt});
    const TemporalPair end = temporal_coefficients(params, t1);
    return std::abs(paths.f.values().back() - end.f) +
           std::abs(paths.g.values().back() - end.g);
}

double w_endpoint_error(const SolutionParams& params, double z0, double z1, double dt) {
    const ReducedProfile start = profile(params, z0);
    const OdePath path = integrate_W(params, z0, start.W, z1, {dt});
    return std::abs(path.values().back() - profile(params, z1).W);
}

} // namespace

TEST_CASE("temporal integration reproduces the case 4 closed form") {
    const FgPaths paths = integrate_fg(kCase4, 1.0, -1.0, 0.0, 2.0, {1e-3});
    CHECK(paths.f.values().back() == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(paths.g.values().back() == doctest::Approx(-std::log(2.0)).epsilon(1e-9));
    CHECK(paths.f.back() == 2.0);
}

TEST_CASE("f stays constant when c1 = 1") {
    const FgPaths paths = integrate_fg({1.0, 0.0, 0.0}, 1.0, 5.0, 1.0, 2.0, {1e-3});
    for (double v : paths.f.values())
        CHECK(v == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("RK4 endpoint error halves sixteenfold with the step") {
    SUBCASE("temporal system, case 4") {
        const double e1 = fg_endpoint_error(kCase4, 1.0, 2.0, 4e-3);
        const double e2 = fg_endpoint_error(kCase4, 1.0, 2.0, 2e-3);
        const double e3 = fg_endpoint_error(kCase4, 1.0, 2.0, 1e-3);
        CHECK(std::log2(e1 / e2) >= 3.9);
        CHECK(std::log2(e2 / e3) >= 3.9);
    }
    SUBCASE("profile equation") {
        // z in [0.1, 1] keeps the truncation error well above roundoff
        const double e1 = w_endpoint_error({2.0, 0.0, 0.0}, 0.1, 1.0, 4e-3);
        const double e2 = w_endpoint_error({2.0, 0.0, 0.0}, 0.1, 1.0, 2e-3);
        const double e3 = w_endpoint_error({2.0, 0.0, 0.0}, 0.1, 1.0, 1e-3);
        CHECK(std::log2(e1 / e2) >= 3.9);
        CHECK(std::log2(e2 / e3) >= 3.9);
    }
}

TEST_CASE("Riccati blow-up is detected with the time attached") {
    // f' = 2 f^2 from f(1) = 1 blows up at t = 1.5
    CHECK_THROWS_WITH_AS(integrate_fg(kCase5, 1.0, 1.0, 0.0, 2.0, {1e-3}),
                         doctest::Contains("blow-up"), DomainError);
}

TEST_CASE("profile integration reproduces the closed forms") {
    SUBCASE("square root") {
        const OdePath path = integrate_W({2.0, 0.0, 0.0}, 1.0, 1.0, 4.0, {1e-3});
        CHECK(path.values().back() == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("exponential") {
        const OdePath path = integrate_W({0.0, 1.0, 0.0}, 0.0, 1.0, 1.0, {1e-3});
        CHECK(path.values().back() == doctest::Approx(std::exp(1.0)).epsilon(1e-8));
    }
    SUBCASE("zero initial data stays zero") {
        const OdePath path = integrate_W({2.0, 0.0, 0.0}, 1.0, 0.0, 4.0, {1e-3});
        for (double v : path.values())
            CHECK(v == 0.0);
    }
}

TEST_CASE("profile integration refuses intervals touching the singular point") {
    // z* = -c2/c1 = 0 for c2 = 0
    CHECK_THROWS_AS(integrate_W({2.0, 0.0, 0.0}, -1.0, 1.0, 1.0, {1e-3}), DomainError);
    // standoff of 10 dt
    CHECK_THROWS_AS(integrate_W({2.0, 0.0, 0.0}, 5e-3, 1.0, 1.0, {1e-3}), DomainError);
    CHECK_THROWS_AS(integrate_W({0.0, 0.0, 0.0}, 0.0, 1.0, 1.0, {1e-3}), DomainError);
}

TEST_CASE("paths reproduce node values exactly and reject out-of-range queries") {
    const FgPaths paths = integrate_fg(kCase4, 1.0, -1.0, 0.0, 2.0, {1e-2});
    const auto& s = paths.f.abscissae();
    const auto& v = paths.f.values();
    const auto& d = paths.f.derivatives();
    for (std::size_t k = 0; k < s.size(); k += 7) {
        CHECK(paths.f.eval(s[k]) == v[k]);
        CHECK(paths.f.eval_derivative(s[k]) == d[k]);
    }
    CHECK_THROWS_AS(paths.f.eval(0.5), DomainError);
    CHECK_THROWS_AS(paths.f.eval(2.5), DomainError);
}

TEST_CASE("Hermite dense output error stays at fourth order between nodes") {
    const double dt = 1e-2;
    const FgPaths paths = integrate_fg(kCase4, 1.0, -1.0, 0.0, 2.0, {dt});
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double t = 1.0 + (k + 0.5) * (1.0 / 50.0) - 0.5 * dt; // mid-interval-ish
        const double exact = temporal_coefficients(kCase4, t).f;
        worst = std::max(worst, std::abs(paths.f.eval(t) - exact));
    }
    // |f''''| <= 24 on [1, 2]; h^4/384 * 24 with headroom for the RK4 drift
    CHECK(worst < 10.0 * std::pow(dt, 4));
}

TEST_CASE("path constructor validates its samples") {
    CHECK_THROWS_AS(OdePath({1.0}, {1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(OdePath({1.0, 1.0}, {1.0, 2.0}, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(OdePath({2.0, 1.0}, {1.0, 2.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("reconstructed fields satisfy the Euler equations") {
    // induced z over this lattice stays in [-0.42, 1.86]; the W path starts
    // at -0.45 with the mandated standoff from the singular point z = -0.5
    const SampleLattice lattice{-1.0, -0.25, 11, -1.0, -0.25, 11,
                                {1.05, 1.25, 1.5, 1.75, 1.95}};
    const double z0 = -0.45, z1 = 2.2;

    SUBCASE("integrated paths, case 4") {
        const FgPaths fg = integrate_fg(kCase4, 1.0, -1.0, 0.0, 2.0, {1e-3});
        const OdePath w = integrate_W(kCase4, z0, profile(kCase4, z0).W, z1, {1e-3});
        const NormReport rep = reconstruct_and_verify(fg, w, lattice);
        CHECK(rep.skipped == 0);
        CHECK(rep.max_abs < 1e-6);
    }
    SUBCASE("sampled closed-form paths agree with the direct analytic residual") {
        // early times keep the square-root base above 0.47, so the quartic
        // derivative driving the interpolation error stays moderate
        const SampleLattice early{-1.0, -0.25, 11, -1.0, -0.25, 11,
                                  {1.05, 1.15, 1.25, 1.35, 1.45}};
        const FgPaths fg = sample_fg_closed_form(kCase4, 1.0, 1.5, 1e-3);
        const OdePath w = sample_W_closed_form(kCase4, -0.1, z1, 1e-3);
        const NormReport rep = reconstruct_and_verify(fg, w, early);
        CHECK(rep.max_abs < 1e-9);

        const NormReport direct = residual_norms(kCase4, early);
        CHECK(std::abs(rep.max_abs - direct.max_abs) < 1e-9);
    }
    SUBCASE("amplitude 2 profile stays an exact solution") {
        const FgPaths fg = integrate_fg(kCase4, 1.0, -1.0, 0.0, 2.0, {1e-3});
        const OdePath w = integrate_W(kCase4, z0, profile(kCase4, z0, 2.0).W, z1, {1e-3});
        const NormReport rep = reconstruct_and_verify(fg, w, lattice);
        CHECK(rep.max_abs < 1e-6);
    }
    SUBCASE("out-of-range lattice raises") {
        const FgPaths fg = integrate_fg(kCase4, 1.0, -1.0, 0.0, 1.5, {1e-3});
        const OdePath w = integrate_W(kCase4, z0, profile(kCase4, z0).W, z1, {1e-3});
        CHECK_THROWS_AS(reconstruct_and_verify(fg, w, lattice), DomainError);
    }
}

TEST_CASE("reconstruction residual decays with at least third order in dt") {
    const SampleLattice lattice{-1.0, -0.25, 9, -1.0, -0.25, 9,
                                {1.05, 1.15, 1.25, 1.35, 1.45}};
    const double dts[] = {8e-3, 4e-3, 2e-3, 1e-3, 5e-4};
    std::vector<double> errs;
    for (double dt : dts) {
        const FgPaths fg = integrate_fg(kCase4, 1.0, -1.0, 0.0, 1.5, {dt});
        const OdePath w = integrate_W(kCase4, -0.1, profile(kCase4, -0.1).W, 2.2, {dt});
        errs.push_back(reconstruct_and_verify(fg, w, lattice).l2);
    }
    for (std::size_t k = 1; k < errs.size(); ++k) {
        CHECK(errs[k] < errs[k - 1]);                       // monotone decay
        CHECK(std::log2(errs[k - 1] / errs[k]) >= 2.5);     // per-pair sanity
    }
    // least-squares slope of log error against log dt across the sweep
    double mx = 0.0, my = 0.0;
    const std::size_t n = errs.size();
    for (std::size_t k = 0; k < n; ++k) {
        mx += std::log(dts[k]);
        my += std::log(errs[k]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        num += (std::log(dts[k]) - mx) * (std::log(errs[k]) - my);
        den += (std::log(dts[k]) - mx) * (std::log(dts[k]) - mx);
    }
    CHECK(num / den >= 3.0);
}
