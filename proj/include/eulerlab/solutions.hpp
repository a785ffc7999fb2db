#pragma once

#include <array>
#include <cmath>
#include <string>

#include "eulerlab/errors.hpp"
#include "eulerlab/jet.hpp"
#include "eulerlab/lattice.hpp"

namespace eulerlab {

// ---------------------------------------------------------------------------
// The solution families under verification.
//
// The velocity/pressure ansatz
//
//   u1 = f(t) y + g(t) + W(z),   u2 = f(t) x + g(t) + Q(z),
//   p  = -f^2 (x^2 + y^2)/2 - f' x y - (g' + f g)(x + y),
//   z  = f(t)(x + y) + g(t)
//
// solves the 2D incompressible Euler equations whenever the temporal pair
// satisfies
//
//   f' = (c1 - 1) f^2,   g' = (c1 - 2) f g + c2 f
//
// and the profiles satisfy Q = -W with (c1 z + c2) W' = W (or W = Q = 0).
// The constants (c1, c2, c3) select one of five closed-form families below.
// ---------------------------------------------------------------------------

// Reduction constants selecting a solution family. c3 is the constant value
// of f and participates only when c1 == 1.
struct SolutionParams {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

// Case 1: c1 = 0, c2 = 0      f = 1/t,           g = 1/t^2,                W = Q = 0
// Case 2: c1 = 0, c2 != 0     f = 1/t,           g = 1/t^2 + c2/2,         W = -Q = exp(z/c2)
// Case 3: c1 = 1              f = c3,            g = exp(-c3 t) + c2,      W = -Q = z + c2
// Case 4: c1 = 2              f = -1/t,          g = -c2 ln t,             W = -Q = sqrt(z + c2/2)
// Case 5: c1 not in {0,1,2}   f = 1/((1-c1) t),  g = t^-g0 - c2/(c1-2),    W = -Q = (z + c2/c1)^(1/c1)
//         with g0 = (c1 - 2)/(c1 - 1)
enum class CaseTag { Case1, Case2, Case3, Case4, Case5 };

// Total classification of finite parameters into the unique matching family.
CaseTag classify(const SolutionParams& params);

const char* case_name(CaseTag tag);

// f, g and their first time derivatives at a fixed time.
struct TemporalPair {
    double f = 0.0;
    double fp = 0.0;
    double g = 0.0;
    double gp = 0.0;
};

// W, Q and their first z-derivatives at a fixed similarity coordinate.
struct ReducedProfile {
    double W = 0.0;
    double Wp = 0.0;
    double Q = 0.0;
    double Qp = 0.0;
};

// One flow evaluation: velocity components, kinematic pressure, the
// similarity coordinate and the analytic pointwise diagnostics
// div = f (W' + Q') and vort = f (Q' - W').
struct FlowState {
    double u1 = 0.0;
    double u2 = 0.0;
    double p = 0.0;
    double z = 0.0;
    double div = 0.0;
    double vort = 0.0;
};

namespace detail {

// 1/c1 exponents that land on an integer (c1 = 1, 1/2, -1, ...) keep the
// power law polynomial/rational; those evaluate on any nonzero base, so the
// positive-base restriction applies only to genuinely fractional exponents.
inline bool near_integer(double x, long& n) {
    if (!std::isfinite(x) || std::abs(x) > 1e12)
        return false;
    const double r = std::nearbyint(x);
    if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) {
        n = static_cast<long>(r);
        return true;
    }
    return false;
}

template <class T>
struct TemporalPairT {
    T f, fp, g, gp;
};

template <class T>
T scalar_of(double v);
template <>
inline double scalar_of<double>(double v) { return v; }
template <>
inline Jet1 scalar_of<Jet1>(double v) { return jet_const(v); }

// Closed forms for f, g per family, on doubles or jets.
template <class T>
TemporalPairT<T> temporal_eval(const SolutionParams& sp, const T& t, CaseTag tag) {
    using std::exp;
    using std::log;
    using std::pow;

    if (tag == CaseTag::Case3) {
        const double c3 = sp.c3;
        TemporalPairT<T> out{scalar_of<T>(c3), scalar_of<T>(0.0), scalar_of<T>(0.0),
                             scalar_of<T>(0.0)};
        out.g = exp((-c3) * t) + sp.c2;
        out.gp = (-c3) * exp((-c3) * t);
        return out;
    }

    if (!(value_of(t) > 0.0))
        throw DomainError("temporal coefficients need t > 0 for this family, got t = " +
                          std::to_string(value_of(t)));

    if (tag == CaseTag::Case4) {
        TemporalPairT<T> out{-1.0 / t, 1.0 / (t * t), (-sp.c2) * log(t), (-sp.c2) / t};
        return out;
    }

    // Cases 1, 2 and 5 share one closed form; c1 = 0 gives f = 1/t and the
    // constant term -c2/(c1-2) = +c2/2.
    const double c1 = sp.c1;
    const double gamma = (c1 - 2.0) / (c1 - 1.0);
    TemporalPairT<T> out{1.0 / ((1.0 - c1) * t), scalar_of<T>(0.0), scalar_of<T>(0.0),
                         scalar_of<T>(0.0)};
    out.fp = (c1 - 1.0) * out.f * out.f;
    out.g = pow(t, -gamma) - sp.c2 / (c1 - 2.0);
    out.gp = (-gamma) * pow(t, -gamma - 1.0);
    return out;
}

// W(z) per family (Q = -W off the trivial branch). The amplitude scales the
// one-parameter solution family of the linear profile equation; the closed
// forms above correspond to amplitude 1.
template <class T>
T profile_value(const SolutionParams& sp, const T& z, CaseTag tag, double amplitude) {
    using std::exp;
    using std::pow;

    switch (tag) {
    case CaseTag::Case1:
        return scalar_of<T>(0.0);
    case CaseTag::Case2:
        return amplitude * exp(z / sp.c2);
    default: {
        const double inv = 1.0 / sp.c1;
        const T base = z + sp.c2 / sp.c1;
        long n = 0;
        if (near_integer(inv, n))
            return amplitude * ipow(base, n);
        if (!(value_of(base) > 0.0))
            throw DomainError("profile power-law base " + std::to_string(value_of(base)) +
                              " is not positive at z = " + std::to_string(value_of(z)));
        return amplitude * pow(base, inv);
    }
    }
}

template <class T>
struct FlowFieldsT {
    T u1, u2, p, z;
};

// The full ansatz composed from the closed forms. Instantiated on Jet1 this
// carries exact first partials through every term, including f' and g'
// appearing inside the pressure.
template <class T>
FlowFieldsT<T> flow_fields(const SolutionParams& sp, const T& x, const T& y, const T& t,
                           double amplitude) {
    const CaseTag tag = classify(sp);
    const TemporalPairT<T> tc = temporal_eval(sp, t, tag);
    FlowFieldsT<T> out{scalar_of<T>(0.0), scalar_of<T>(0.0), scalar_of<T>(0.0),
                       scalar_of<T>(0.0)};
    out.z = tc.f * (x + y) + tc.g;
    const T W = profile_value(sp, out.z, tag, amplitude);
    out.u1 = tc.f * y + tc.g + W;
    out.u2 = tc.f * x + tc.g - W;
    out.p = -0.5 * (tc.f * tc.f) * (x * x + y * y) - tc.fp * (x * y) -
            (tc.gp + tc.f * tc.g) * (x + y);
    return out;
}

} // namespace detail

using FlowJet = detail::FlowFieldsT<Jet1>;

// Closed-form f, g, f', g' at time t. Families other than Case 3 require
// t > 0 (pole at t = 0, ln t, fractional powers).
TemporalPair temporal_coefficients(const SolutionParams& params, double t);

// Closed-form W, Q, W', Q' at similarity coordinate z. Fractional-exponent
// bases must be strictly positive (real branch); violations raise
// DomainError naming the offending z.
ReducedProfile profile(const SolutionParams& params, double z, double amplitude = 1.0);

// z = f (x + y) + g.
double similarity_z(const TemporalPair& pair, double x, double y);

// Assembles a FlowState from already-evaluated temporal pair and profile.
// The profile must have been evaluated at similarity_z(pair, x, y).
FlowState reduction_map(const TemporalPair& pair, const ReducedProfile& prof, double x,
                        double y);

// classify -> temporal_coefficients -> profile -> reduction_map; the
// canonical evaluator.
FlowState evaluate_case(const SolutionParams& params, double x, double y, double t,
                        double amplitude = 1.0);

// Same composition on jets: exact analytic partials of u1, u2, p.
FlowJet evaluate_case_jet(const SolutionParams& params, const Jet1& x, const Jet1& y,
                          const Jet1& t, double amplitude = 1.0);

// Verbatim transcription of the hand-expanded per-case formulas, kept as an
// independent cross-check of the composed evaluator. The Case 5 entry is
// known to disagree with the composition (sign and constant defects in its
// bracket and pressure terms); the diff tooling reports the discrepancy
// instead of silently correcting it. div/vort are finite-difference
// estimates here since the transcription carries no derivative forms.
FlowState tabulated_solution(const SolutionParams& params, double x, double y, double t);

// Admissibility predicate for sampling: time domain, optional bounding box,
// and clearance of the profile's power-law base above `margin`.
struct EvalDomain {
    double t_min = 1e-3;
    double x_min = -1e30, x_max = 1e30;
    double y_min = -1e30, y_max = 1e30;
    double margin = 0.0;

    bool admissible(const SolutionParams& params, double x, double y, double t) const;
};

// Worst absolute deviation of the tabulated formulas from the composed
// evaluator over a lattice, per component. Points where either form leaves
// its real domain are skipped and counted (the defective tabulated Case 5
// bracket has a different domain than the composition).
struct TabulatedDiff {
    CaseTag tag = CaseTag::Case1;
    double max_du1 = 0.0;
    double max_du2 = 0.0;
    double max_dp = 0.0;
    std::array<double, 3> worst_point{0.0, 0.0, 0.0};
    std::size_t points = 0;
    std::size_t skipped = 0;

    double max_abs() const { return std::max({max_du1, max_du2, max_dp}); }
};

// Compares tabulated_solution against evaluate_case on every admissible
// lattice point.
TabulatedDiff tabulated_diff(const SolutionParams& params, const SampleLattice& lattice,
                             const EvalDomain& domain = {});

struct CaseInfo {
    CaseTag tag;
    const char* name;
    const char* constraint;
    const char* f_form;
    const char* g_form;
    const char* profile_form;
};

// The five-family catalogue with parameter constraints and closed forms.
std::array<CaseInfo, 5> case_catalog();

} // namespace eulerlab
