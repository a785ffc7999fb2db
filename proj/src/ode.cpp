#include "eulerlab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace eulerlab {

namespace {

constexpr double kBlowupLimit = 1e12;

// Hermite basis evaluation on one segment, returning value and the first two
// derivatives of the cubic.
struct CubicEval {
    double v, d1, d2;
};

CubicEval hermite(double s, double s0, double s1, double v0, double v1, double d0,
                  double d1) {
    const double h = s1 - s0;
    const double u = (s - s0) / h;
    const double u2 = u * u;
    const double u3 = u2 * u;

    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    const double h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2;
    const double h11 = u3 - u2;

    const double g00 = (6.0 * u2 - 6.0 * u) / h;
    const double g10 = 3.0 * u2 - 4.0 * u + 1.0;
    const double g01 = (-6.0 * u2 + 6.0 * u) / h;
    const double g11 = 3.0 * u2 - 2.0 * u;

    const double q00 = (12.0 * u - 6.0) / (h * h);
    const double q10 = (6.0 * u - 4.0) / h;
    const double q01 = (-12.0 * u + 6.0) / (h * h);
    const double q11 = (6.0 * u - 2.0) / h;

    CubicEval out;
    out.v = h00 * v0 + h10 * h * d0 + h01 * v1 + h11 * h * d1;
    out.d1 = g00 * v0 + g10 * d0 + g01 * v1 + g11 * d1;
    out.d2 = q00 * v0 + q10 * d0 + q01 * v1 + q11 * d1;
    return out;
}

} // namespace

OdePath::OdePath(std::vector<double> s, std::vector<double> v, std::vector<double> d)
    : s_(std::move(s)), v_(std::move(v)), d_(std::move(d)) {
    if (s_.size() < 2 || s_.size() != v_.size() || s_.size() != d_.size())
        throw std::invalid_argument("OdePath needs >= 2 consistent samples");
    for (std::size_t i = 1; i < s_.size(); ++i)
        if (!(s_[i] > s_[i - 1]))
            throw std::invalid_argument("OdePath abscissae must be strictly increasing");
}

std::size_t OdePath::segment(double s) const {
    const double span = s_.back() - s_.front();
    const double slack = 1e-12 * std::max(1.0, std::abs(span));
    if (s < s_.front() - slack || s > s_.back() + slack)
        throw DomainError("path query s = " + std::to_string(s) + " outside [" +
                          std::to_string(s_.front()) + ", " + std::to_string(s_.back()) +
                          "]");
    const auto it = std::upper_bound(s_.begin(), s_.end(), s);
    std::size_t k = static_cast<std::size_t>(it - s_.begin());
    if (k == 0)
        k = 1;
    if (k >= s_.size())
        k = s_.size() - 1;
    return k - 1;
}

double OdePath::eval(double s) const {
    const std::size_t k = segment(s);
    if (s == s_[k])
        return v_[k];
    if (s == s_[k + 1])
        return v_[k + 1];
    return hermite(s, s_[k], s_[k + 1], v_[k], v_[k + 1], d_[k], d_[k + 1]).v;
}

double OdePath::eval_derivative(double s) const {
    const std::size_t k = segment(s);
    if (s == s_[k])
        return d_[k];
    if (s == s_[k + 1])
        return d_[k + 1];
    return hermite(s, s_[k], s_[k + 1], v_[k], v_[k + 1], d_[k], d_[k + 1]).d1;
}

double OdePath::eval_second_derivative(double s) const {
    const std::size_t k = segment(s);
    return hermite(s, s_[k], s_[k + 1], v_[k], v_[k + 1], d_[k], d_[k + 1]).d2;
}

namespace {

// Step sequence covering [s0, s1] with fixed dt and one shortened final step.
std::vector<double> step_sizes(double s0, double s1, double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("integrator dt must be positive");
    const double len = s1 - s0;
    if (!(len > 0.0))
        throw std::invalid_argument("integration interval must be increasing");
    std::vector<double> steps;
    const double n_exact = len / dt;
    const auto n_full = static_cast<std::size_t>(std::floor(n_exact + 1e-9));
    steps.assign(n_full, dt);
    const double rest = len - static_cast<double>(n_full) * dt;
    if (rest > 1e-12 * std::max(1.0, std::abs(len)))
        steps.push_back(rest);
    else if (!steps.empty())
        steps.back() += rest; // absorb roundoff so the endpoint lands on s1
    return steps;
}

} // namespace

FgPaths integrate_fg(const SolutionParams& params, double t0, double f0, double g0,
                     double t1, const IntegratorConfig& cfg) {
    if (!(t0 > 0.0) || !(t1 > 0.0))
        throw DomainError("integrate_fg needs t0, t1 > 0");
    if (classify(params) != CaseTag::Case3 && std::min(t0, t1) < 10.0 * cfg.dt)
        throw DomainError("integration interval too close to the pole at t = 0");

    const double c1 = params.c1, c2 = params.c2;
    auto f_rhs = [&](double f) { return (c1 - 1.0) * f * f; };
    auto g_rhs = [&](double f, double g) { return (c1 - 2.0) * f * g + c2 * f; };

    const std::vector<double> steps = step_sizes(t0, t1, cfg.dt);
    std::vector<double> ts, fs, gs, fps, gps;
    ts.reserve(steps.size() + 1);
    double t = t0, f = f0, g = g0;
    auto record = [&]() {
        ts.push_back(t);
        fs.push_back(f);
        gs.push_back(g);
        fps.push_back(f_rhs(f));
        gps.push_back(g_rhs(f, g));
    };
    record();
    for (double h : steps) {
        const double k1f = f_rhs(f), k1g = g_rhs(f, g);
        const double f2 = f + 0.5 * h * k1f, g2 = g + 0.5 * h * k1g;
        const double k2f = f_rhs(f2), k2g = g_rhs(f2, g2);
        const double f3 = f + 0.5 * h * k2f, g3 = g + 0.5 * h * k2g;
        const double k3f = f_rhs(f3), k3g = g_rhs(f3, g3);
        const double f4 = f + h * k3f, g4 = g + h * k3g;
        const double k4f = f_rhs(f4), k4g = g_rhs(f4, g4);
        f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
        g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
        t += h;
        if (!(std::abs(f) < kBlowupLimit) || !std::isfinite(g))
            throw DomainError("temporal ODE blow-up detected near t = " + std::to_string(t));
        record();
    }
    ts.back() = t1;
    return {OdePath(ts, fs, fps), OdePath(std::move(ts), std::move(gs), std::move(gps))};
}

OdePath integrate_W(const SolutionParams& params, double z0, double W0, double z1,
                    const IntegratorConfig& cfg) {
    const double c1 = params.c1, c2 = params.c2;
    if (c1 == 0.0 && c2 == 0.0)
        throw DomainError("profile ODE is singular everywhere for c1 = c2 = 0");
    if (!std::isfinite(W0))
        throw std::invalid_argument("integrate_W needs a finite W0");
    const double lo = std::min(z0, z1), hi = std::max(z0, z1);
    if (c1 != 0.0) {
        const double z_star = -c2 / c1;
        const double clearance = 10.0 * cfg.dt;
        if (z_star >= lo - clearance && z_star <= hi + clearance)
            throw DomainError("integration interval touches the singular point z = " +
                              std::to_string(z_star));
    }

    auto rhs = [&](double z, double W) { return W / (c1 * z + c2); };

    const std::vector<double> steps = step_sizes(z0, z1, cfg.dt);
    std::vector<double> zs, ws, wps;
    double z = z0, W = W0;
    auto record = [&]() {
        zs.push_back(z);
        ws.push_back(W);
        wps.push_back(rhs(z, W));
    };
    record();
    for (double h : steps) {
        const double k1 = rhs(z, W);
        const double k2 = rhs(z + 0.5 * h, W + 0.5 * h * k1);
        const double k3 = rhs(z + 0.5 * h, W + 0.5 * h * k2);
        const double k4 = rhs(z + h, W + h * k3);
        W += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        z += h;
        if (!(std::abs(W) < kBlowupLimit))
            throw DomainError("profile ODE blow-up detected near z = " + std::to_string(z));
        record();
    }
    zs.back() = z1;
    return OdePath(std::move(zs), std::move(ws), std::move(wps));
}

FgPaths sample_fg_closed_form(const SolutionParams& params, double t0, double t1,
                              double dt) {
    const std::vector<double> steps = step_sizes(t0, t1, dt);
    std::vector<double> ts, fs, gs, fps, gps;
    double t = t0;
    auto record = [&]() {
        const TemporalPair tc = temporal_coefficients(params, t);
        ts.push_back(t);
        fs.push_back(tc.f);
        gs.push_back(tc.g);
        fps.push_back(tc.fp);
        gps.push_back(tc.gp);
    };
    record();
    for (double h : steps) {
        t += h;
        record();
    }
    ts.back() = t1;
    return {OdePath(ts, fs, fps), OdePath(std::move(ts), std::move(gs), std::move(gps))};
}

OdePath sample_W_closed_form(const SolutionParams& params, double z0, double z1, double dt,
                             double amplitude) {
    const std::vector<double> steps = step_sizes(z0, z1, dt);
    std::vector<double> zs, ws, wps;
    double z = z0;
    auto record = [&]() {
        const ReducedProfile prof = profile(params, z, amplitude);
        zs.push_back(z);
        ws.push_back(prof.W);
        wps.push_back(prof.Wp);
    };
    record();
    for (double h : steps) {
        z += h;
        record();
    }
    zs.back() = z1;
    return OdePath(std::move(zs), std::move(ws), std::move(wps));
}

namespace {

Jet1 path_jet(const OdePath& path, const Jet1& s) {
    const double v = path.eval(s.v);
    const double d = path.eval_derivative(s.v);
    return {v, d * s.dx, d * s.dy, d * s.dt};
}

Jet1 path_derivative_jet(const OdePath& path, const Jet1& s) {
    const double v = path.eval_derivative(s.v);
    const double d = path.eval_second_derivative(s.v);
    return {v, d * s.dx, d * s.dy, d * s.dt};
}

} // namespace

FlowField reconstructed_field(const FgPaths& fg, const OdePath& w_path) {
    auto state = std::make_shared<const std::pair<FgPaths, OdePath>>(fg, w_path);
    return [state](const Jet1& x, const Jet1& y, const Jet1& t) -> FlowJet {
        const OdePath& pf = state->first.f;
        const OdePath& pg = state->first.g;
        const OdePath& pw = state->second;

        const Jet1 f = path_jet(pf, t);
        const Jet1 fp = path_derivative_jet(pf, t);
        const Jet1 g = path_jet(pg, t);
        const Jet1 gp = path_derivative_jet(pg, t);

        FlowJet out;
        out.z = f * (x + y) + g;
        const Jet1 W = path_jet(pw, out.z);
        out.u1 = f * y + g + W;
        out.u2 = f * x + g - W;
        out.p = -0.5 * (f * f) * (x * x + y * y) - fp * (x * y) - (gp + f * g) * (x + y);
        return out;
    };
}

NormReport reconstruct_and_verify(const FgPaths& fg, const OdePath& w_path,
                                  const SampleLattice& lattice) {
    return residual_norms(reconstructed_field(fg, w_path), lattice, DerivMethod::Analytic,
                          {}, {}, /*skip_on_domain_error=*/false);
}

} // namespace eulerlab
