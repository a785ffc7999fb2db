#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "eulerlab/finite_diff.hpp"
#include "eulerlab/jet.hpp"
#include "eulerlab/lattice.hpp"
#include "eulerlab/solutions.hpp"

namespace eulerlab {

// Pointwise residual of the scalar-form Euler system:
//   r_div = u1_x + u2_y
//   r_mx  = u1_t + u1 u1_x + u2 u1_y + p_x
//   r_my  = u2_t + u1 u2_x + u2 u2_y + p_y
struct EulerResidual {
    double r_div = 0.0;
    double r_mx = 0.0;
    double r_my = 0.0;

    double max_abs() const;
};

enum class DerivMethod { Analytic, FiniteDifference };

// Any flow field presented through jet coordinates. With seeded inputs the
// result carries exact first partials; with constant jets it is a plain
// evaluation.
using FlowField = std::function<FlowJet(const Jet1& x, const Jet1& y, const Jet1& t)>;

// The case solution as a FlowField.
FlowField case_field(const SolutionParams& params, double amplitude = 1.0);

EulerResidual euler_residual(const FlowField& field, double x, double y, double t,
                             DerivMethod method = DerivMethod::Analytic,
                             const StencilSpec& spec = {});

EulerResidual euler_residual(const SolutionParams& params, double x, double y, double t,
                             DerivMethod method = DerivMethod::Analytic,
                             const StencilSpec& spec = {}, double amplitude = 1.0);

// Residual aggregate over a lattice. l2 is the RMS over all residual
// components, accumulated with compensated summation so the value is
// reproducible to roundoff independent of traversal order.
struct NormReport {
    double max_abs = 0.0;
    double l2 = 0.0;
    std::array<double, 3> component_max{0.0, 0.0, 0.0}; // div, mx, my
    std::array<double, 3> worst_point{0.0, 0.0, 0.0};   // x, y, t
    int worst_component = -1;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
};

// Aggregates euler_residual over every lattice point passing `admissible`
// (all points when it is empty). Points failing the predicate, or raising
// DomainError during evaluation, are counted as skipped; with
// skip_on_domain_error = false evaluation errors propagate instead.
NormReport residual_norms(const FlowField& field, const SampleLattice& lattice,
                          DerivMethod method = DerivMethod::Analytic,
                          const StencilSpec& spec = {},
                          const std::function<bool(double, double, double)>& admissible = {},
                          bool skip_on_domain_error = true);

NormReport residual_norms(const SolutionParams& params, const SampleLattice& lattice,
                          DerivMethod method = DerivMethod::Analytic,
                          const StencilSpec& spec = {}, const EvalDomain& domain = {},
                          double amplitude = 1.0);

// Residuals of the temporal system: r_f = f' - (c1-1) f^2,
// r_g = g' - (c1-2) f g - c2 f.
std::pair<double, double> ode_residual_fg(const SolutionParams& params,
                                          const TemporalPair& pair);

// Residuals of the reduced profile system:
//   r1 = W' + Q'
//   r2 = W W' + (c1 z + c2) W' + Q W' + Q
//   r3 = Q Q' + (c1 z + c2) Q' + W Q' + W
std::array<double, 3> ode_residual_WQ(const SolutionParams& params, double z,
                                      const ReducedProfile& prof);

// The eighteen coefficient-ratio constraints of the reduction with the
// determined assignments substituted (alpha = f y + g, beta = eta = 1,
// xi = f x + g, z = f(x+y) + g, Gamma5 = Gamma12 = c1 z + c2, the remaining
// Gammas 0 or 1). Residuals are LHS - RHS, indexed in equation order; the
// relative mode divides by max(|LHS|, |RHS|, 1).
std::array<double, 18> constraint_check(const SolutionParams& params, double x, double y,
                                        double t, bool relative = false);

// Axis-aligned box for randomized admissible sampling.
struct SampleBox {
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    double t_min = 1.0, t_max = 2.0;
};

// Deterministic rejection sampler: uniform draws in the box, filtered by the
// domain predicate. Throws DomainError when the box yields too few
// admissible points.
std::vector<std::array<double, 3>> random_admissible_points(const SolutionParams& params,
                                                            const SampleBox& box,
                                                            std::size_t count,
                                                            std::uint64_t seed,
                                                            const EvalDomain& domain = {});

// Fully admissible sampling boxes used by the verification suites, one per
// case family (chosen to keep power-law bases clear of zero).
SampleBox default_sample_box(CaseTag tag);

} // namespace eulerlab
