#include "eulerlab/solutions.hpp"

#include <cmath>
#include <stdexcept>

#include "eulerlab/finite_diff.hpp"

namespace eulerlab {

CaseTag classify(const SolutionParams& params) {
    if (!(std::isfinite(params.c1) && std::isfinite(params.c2) && std::isfinite(params.c3)))
        throw std::invalid_argument("classify: parameters must be finite");
    if (params.c1 == 0.0)
        return params.c2 == 0.0 ? CaseTag::Case1 : CaseTag::Case2;
    if (params.c1 == 1.0)
        return CaseTag::Case3;
    if (params.c1 == 2.0)
        return CaseTag::Case4;
    return CaseTag::Case5;
}

const char* case_name(CaseTag tag) {
    switch (tag) {
    case CaseTag::Case1: return "case 1";
    case CaseTag::Case2: return "case 2";
    case CaseTag::Case3: return "case 3";
    case CaseTag::Case4: return "case 4";
    default:             return "case 5";
    }
}

TemporalPair temporal_coefficients(const SolutionParams& params, double t) {
    const auto tc = detail::temporal_eval<double>(params, t, classify(params));
    return {tc.f, tc.fp, tc.g, tc.gp};
}

ReducedProfile profile(const SolutionParams& params, double z, double amplitude) {
    const CaseTag tag = classify(params);
    switch (tag) {
    case CaseTag::Case1:
        return {0.0, 0.0, 0.0, 0.0};
    case CaseTag::Case2: {
        const double W = amplitude * std::exp(z / params.c2);
        const double Wp = W / params.c2;
        return {W, Wp, -W, -Wp};
    }
    default: {
        const double inv = 1.0 / params.c1;
        const double base = z + params.c2 / params.c1;
        double W = 0.0, Wp = 0.0;
        long n = 0;
        if (detail::near_integer(inv, n)) {
            if (n < 1 && base == 0.0)
                throw DomainError("profile power-law base vanishes at z = " +
                                  std::to_string(z));
            W = amplitude * ipow(base, n);
            Wp = amplitude * static_cast<double>(n) * ipow(base, n - 1);
        } else {
            if (!(base > 0.0))
                throw DomainError("profile power-law base " + std::to_string(base) +
                                  " is not positive at z = " + std::to_string(z));
            W = amplitude * std::pow(base, inv);
            Wp = amplitude * inv * std::pow(base, inv - 1.0);
        }
        return {W, Wp, -W, -Wp};
    }
    }
}

double similarity_z(const TemporalPair& pair, double x, double y) {
    return pair.f * (x + y) + pair.g;
}

FlowState reduction_map(const TemporalPair& pair, const ReducedProfile& prof, double x,
                        double y) {
    FlowState s;
    s.z = similarity_z(pair, x, y);
    s.u1 = pair.f * y + pair.g + prof.W;
    s.u2 = pair.f * x + pair.g + prof.Q;
    s.p = -0.5 * pair.f * pair.f * (x * x + y * y) - pair.fp * x * y -
          (pair.gp + pair.f * pair.g) * (x + y);
    s.div = pair.f * (prof.Wp + prof.Qp);
    s.vort = pair.f * (prof.Qp - prof.Wp);
    return s;
}

FlowState evaluate_case(const SolutionParams& params, double x, double y, double t,
                        double amplitude) {
    const TemporalPair pair = temporal_coefficients(params, t);
    const ReducedProfile prof = profile(params, similarity_z(pair, x, y), amplitude);
    return reduction_map(pair, prof, x, y);
}

FlowJet evaluate_case_jet(const SolutionParams& params, const Jet1& x, const Jet1& y,
                          const Jet1& t, double amplitude) {
    return detail::flow_fields<Jet1>(params, x, y, t, amplitude);
}

namespace {

// Shared power helper for the tabulated formulas: integer 1/c1 exponents
// evaluate on any base, fractional ones on positive bases only.
double tab_power(double base, double c1) {
    const double inv = 1.0 / c1;
    long n = 0;
    if (detail::near_integer(inv, n)) {
        if (n < 1 && base == 0.0)
            throw DomainError("tabulated power base vanishes");
        return ipow(base, n);
    }
    if (!(base > 0.0))
        throw DomainError("tabulated power base " + std::to_string(base) +
                          " is not positive");
    return std::pow(base, inv);
}

struct TabValues {
    double u1, u2, p;
};

TabValues tabulated_values(const SolutionParams& sp, CaseTag tag, double x, double y,
                           double t) {
    const double c2 = sp.c2;
    if (tag != CaseTag::Case3 && !(t > 0.0))
        throw DomainError("tabulated solution needs t > 0 for this family, got t = " +
                          std::to_string(t));

    switch (tag) {
    case CaseTag::Case1: {
        const double u1 = y / t + 1.0 / (t * t);
        const double u2 = x / t + 1.0 / (t * t);
        const double p =
            -(x - y) * (x - y) / (2.0 * t * t) + (x + y) / (t * t * t);
        return {u1, u2, p};
    }
    case CaseTag::Case2: {
        const double e = std::exp((t * x + t * y + 1.0) / (c2 * t * t) + 0.5);
        const double a = y / t + 1.0 / (t * t) + c2 / 2.0;
        const double b = x / t + 1.0 / (t * t) + c2 / 2.0;
        const double p = -(x - y) * (x - y) / (2.0 * t * t) +
                         (1.0 / (t * t * t) - c2 / (2.0 * t)) * (x + y);
        return {a + e, b - e, p};
    }
    case CaseTag::Case3: {
        const double c3 = sp.c3;
        const double u1 = c3 * (x + 2.0 * y) + 2.0 * std::exp(-c3 * t) + 3.0 * c2;
        const double u2 = -c3 * y - c2;
        const double p = -0.5 * c3 * c3 * (x * x + y * y) - c2 * c3 * (x + y);
        return {u1, u2, p};
    }
    case CaseTag::Case4: {
        const double bracket = -(x + y) / t - c2 * std::log(t) + c2 / 2.0;
        if (bracket < 0.0)
            throw DomainError("tabulated case 4 bracket " + std::to_string(bracket) +
                              " is negative");
        const double root = std::sqrt(bracket);
        const double u1 = -y / t - c2 * std::log(t) + root;
        const double u2 = -x / t - c2 * std::log(t) - root;
        const double p = -0.5 * (x + y) * (x + y) / (t * t) +
                         c2 / t * (1.0 - std::log(t)) * (x + y);
        return {u1, u2, p};
    }
    default: {
        const double c1 = sp.c1;
        const double gamma = (c1 - 2.0) / (c1 - 1.0);
        const double tg = std::pow(t, -gamma);
        const double affine = tg - c2 / (c1 - 2.0);
        const double xy_term = -(x + y) / ((1.0 - c1) * t);
        const double const_term = 2.0 * c2 / (c1 * (c1 - 2.0));
        const double b1 = xy_term + tg - const_term;
        const double b2 = xy_term + tg + const_term;
        const double u1 = y / ((1.0 - c1) * t) + affine + tab_power(b1, c1);
        const double u2 = x / ((1.0 - c1) * t) + affine - tab_power(b2, c1);
        const double p =
            -0.5 * (x * x + y * y) / (t * t * (c1 - 1.0) * (c1 - 1.0)) -
            x * y / (t * t * (1.0 - c1)) +
            (-gamma * tg - c2 / (t * (1.0 - c1) * (c1 - 2.0))) * (x + y);
        return {u1, u2, p};
    }
    }
}

} // namespace

FlowState tabulated_solution(const SolutionParams& params, double x, double y, double t) {
    const CaseTag tag = classify(params);
    const TabValues v = tabulated_values(params, tag, x, y, t);

    FlowState s;
    s.u1 = v.u1;
    s.u2 = v.u2;
    s.p = v.p;
    s.z = similarity_z(temporal_coefficients(params, t), x, y);

    auto u1f = [&](double xx, double yy, double tt) {
        return tabulated_values(params, tag, xx, yy, tt).u1;
    };
    auto u2f = [&](double xx, double yy, double tt) {
        return tabulated_values(params, tag, xx, yy, tt).u2;
    };
    s.div = fd_partial(u1f, x, y, t, Axis::X) + fd_partial(u2f, x, y, t, Axis::Y);
    s.vort = fd_partial(u2f, x, y, t, Axis::X) - fd_partial(u1f, x, y, t, Axis::Y);
    return s;
}

bool EvalDomain::admissible(const SolutionParams& params, double x, double y,
                            double t) const {
    if (!(std::isfinite(x) && std::isfinite(y) && std::isfinite(t)))
        return false;
    if (x < x_min || x > x_max || y < y_min || y > y_max)
        return false;

    const CaseTag tag = classify(params);
    if (tag != CaseTag::Case3) {
        if (!(t > 0.0) || t < t_min)
            return false;
    }
    if (tag == CaseTag::Case1 || tag == CaseTag::Case2)
        return true;

    const double inv = 1.0 / params.c1;
    long n = 0;
    const bool integral = detail::near_integer(inv, n);
    if (integral && n >= 1)
        return true;

    const TemporalPair pair = temporal_coefficients(params, t);
    const double base = similarity_z(pair, x, y) + params.c2 / params.c1;
    if (integral)
        return std::abs(base) > margin;
    return base > margin && base > 0.0;
}

TabulatedDiff tabulated_diff(const SolutionParams& params, const SampleLattice& lattice,
                             const EvalDomain& domain) {
    lattice.validate();
    TabulatedDiff diff;
    diff.tag = classify(params);
    lattice.for_each([&](double x, double y, double t) {
        if (!domain.admissible(params, x, y, t)) {
            ++diff.skipped;
            return;
        }
        FlowState a, b;
        try {
            a = evaluate_case(params, x, y, t);
            b = tabulated_solution(params, x, y, t);
        } catch (const DomainError&) {
            ++diff.skipped;
            return;
        }
        const double du1 = std::abs(b.u1 - a.u1);
        const double du2 = std::abs(b.u2 - a.u2);
        const double dp = std::abs(b.p - a.p);
        const double worst = std::max({du1, du2, dp});
        if (worst > diff.max_abs())
            diff.worst_point = {x, y, t};
        diff.max_du1 = std::max(diff.max_du1, du1);
        diff.max_du2 = std::max(diff.max_du2, du2);
        diff.max_dp = std::max(diff.max_dp, dp);
        ++diff.points;
    });
    return diff;
}

std::array<CaseInfo, 5> case_catalog() {
    return {{
        {CaseTag::Case1, "case 1", "c1 = 0, c2 = 0", "f = 1/t", "g = 1/t^2", "W = Q = 0"},
        {CaseTag::Case2, "case 2", "c1 = 0, c2 != 0", "f = 1/t", "g = 1/t^2 + c2/2",
         "W = -Q = exp(z/c2)"},
        {CaseTag::Case3, "case 3", "c1 = 1 (f = c3)", "f = c3", "g = exp(-c3 t) + c2",
         "W = -Q = z + c2"},
        {CaseTag::Case4, "case 4", "c1 = 2", "f = -1/t", "g = -c2 ln t",
         "W = -Q = sqrt(z + c2/2)"},
        {CaseTag::Case5, "case 5", "c1 not in {0, 1, 2}", "f = 1/((1-c1) t)",
         "g = t^((2-c1)/(c1-1)) - c2/(c1-2)", "W = -Q = (z + c2/c1)^(1/c1)"},
    }};
}

} // namespace eulerlab
