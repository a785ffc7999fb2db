#pragma once

#include <vector>

#include "eulerlab/lattice.hpp"
#include "eulerlab/residuals.hpp"
#include "eulerlab/solutions.hpp"

namespace eulerlab {

// Samples (s, value, derivative) of a scalar function on a strictly
// increasing abscissa, with cubic Hermite dense evaluation between nodes.
// Node queries reproduce the stored values exactly.
class OdePath {
public:
    OdePath() = default;
    OdePath(std::vector<double> s, std::vector<double> v, std::vector<double> d);

    double eval(double s) const;
    double eval_derivative(double s) const;
    double eval_second_derivative(double s) const;

    double front() const { return s_.front(); }
    double back() const { return s_.back(); }
    std::size_t size() const { return s_.size(); }
    const std::vector<double>& abscissae() const { return s_; }
    const std::vector<double>& values() const { return v_; }
    const std::vector<double>& derivatives() const { return d_; }

private:
    std::size_t segment(double s) const;

    std::vector<double> s_, v_, d_;
};

struct IntegratorConfig {
    double dt = 1e-3;
};

struct FgPaths {
    OdePath f;
    OdePath g;
};

// Fixed-step RK4 on f' = (c1-1) f^2, g' = (c1-2) f g + c2 f over [t0, t1]
// (final step shortened to land on t1). Aborts with the detected time when
// |f| exceeds 1e12; keeps a standoff of 10 dt from the pole at t = 0.
FgPaths integrate_fg(const SolutionParams& params, double t0, double f0, double g0,
                     double t1, const IntegratorConfig& cfg = {});

// Fixed-step RK4 on the scalar profile equation (c1 z + c2) W' = W. The
// interval must stay at least 10 dt away from the singular point z = -c2/c1.
OdePath integrate_W(const SolutionParams& params, double z0, double W0, double z1,
                    const IntegratorConfig& cfg = {});

// Paths built by sampling the closed forms (values plus exact derivatives)
// instead of integrating; reference inputs for consistency checks.
FgPaths sample_fg_closed_form(const SolutionParams& params, double t0, double t1,
                              double dt = 1e-3);
OdePath sample_W_closed_form(const SolutionParams& params, double z0, double z1,
                             double dt = 1e-3, double amplitude = 1.0);

// The reduction ansatz evaluated through Hermite interpolants of f, g and W
// (Q = -W), with derivatives taken from the interpolants themselves so jet
// composition differentiates exactly the field being tested.
FlowField reconstructed_field(const FgPaths& fg, const OdePath& w_path);

// Pushes the paths through the reduction and aggregates the analytic Euler
// residual over the lattice. Out-of-range interpolation queries raise
// DomainError.
NormReport reconstruct_and_verify(const FgPaths& fg, const OdePath& w_path,
                                  const SampleLattice& lattice);

} // namespace eulerlab
