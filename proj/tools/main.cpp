// eulerlab command-line front end: sampling, residual verification,
// constraint checks, reduction-path verification and the bounded-patch
// evolution harness.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 domain/singularity error,
// 3 verification failure (a norm exceeded its tolerance), 4 solver
// non-convergence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eulerlab/evolve.hpp"
#include "eulerlab/io.hpp"
#include "eulerlab/ode.hpp"
#include "eulerlab/residuals.hpp"
#include "eulerlab/solutions.hpp"

using nlohmann::json;
using namespace eulerlab;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kDomain = 2;
constexpr int kVerify = 3;
constexpr int kSolver = 4;

int case_number(CaseTag tag) {
    switch (tag) {
    case CaseTag::Case1: return 1;
    case CaseTag::Case2: return 2;
    case CaseTag::Case3: return 3;
    case CaseTag::Case4: return 4;
    default: return 5;
    }
}

struct ParamOpts {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    int expect_case = 0;
    double amplitude = 1.0;
};

void add_param_opts(CLI::App* cmd, ParamOpts& o) {
    cmd->add_option("--c1", o.c1, "reduction constant c1");
    cmd->add_option("--c2", o.c2, "reduction constant c2");
    cmd->add_option("--c3", o.c3, "constant value of f, used when c1 = 1");
    cmd->add_option("--case", o.expect_case,
                    "expected case number 1-5; errors when the constants select a "
                    "different family")
        ->check(CLI::Range(1, 5));
    cmd->add_option("--amplitude", o.amplitude, "profile amplitude (default 1)");
}

SolutionParams resolve_params(const ParamOpts& o) {
    const SolutionParams params{o.c1, o.c2, o.c3};
    const CaseTag tag = classify(params);
    if (o.expect_case != 0 && case_number(tag) != o.expect_case)
        throw std::invalid_argument("constants select " + std::string(case_name(tag)) +
                                    ", not case " + std::to_string(o.expect_case));
    return params;
}

struct LatticeOpts {
    double x_min = -1.0, x_max = 1.0;
    int nx = 21;
    double y_min = -1.0, y_max = 1.0;
    int ny = 21;
    std::vector<double> ts{1.0};
};

void add_lattice_opts(CLI::App* cmd, LatticeOpts& o) {
    cmd->add_option("--xmin", o.x_min, "lattice lower x bound");
    cmd->add_option("--xmax", o.x_max, "lattice upper x bound");
    cmd->add_option("--nx", o.nx, "lattice points along x");
    cmd->add_option("--ymin", o.y_min, "lattice lower y bound");
    cmd->add_option("--ymax", o.y_max, "lattice upper y bound");
    cmd->add_option("--ny", o.ny, "lattice points along y");
    cmd->add_option("--t", o.ts, "time level(s), repeatable")->take_all();
}

SampleLattice resolve_lattice(const LatticeOpts& o) {
    SampleLattice lattice{o.x_min, o.x_max, o.nx, o.y_min, o.y_max, o.ny, o.ts};
    lattice.validate();
    return lattice;
}

json norm_json(const NormReport& r) {
    return json{{"max_abs", r.max_abs},
                {"l2", r.l2},
                {"worst_point", {r.worst_point[0], r.worst_point[1], r.worst_point[2]}},
                {"skipped", r.skipped}};
}

void print_norm_table(const NormReport& r, const std::string& title) {
    const char* comp[] = {"continuity", "x-momentum", "y-momentum"};
    std::printf("%s\n", title.c_str());
    std::printf("  %-12s %zu\n", "evaluated", r.evaluated);
    std::printf("  %-12s %zu\n", "skipped", r.skipped);
    std::printf("  %-12s %.6e\n", "max_abs", r.max_abs);
    std::printf("  %-12s %.6e\n", "l2", r.l2);
    if (r.worst_component >= 0)
        std::printf("  %-12s %s at (x=%.6g, y=%.6g, t=%.6g)\n", "worst",
                    comp[r.worst_component], r.worst_point[0], r.worst_point[1],
                    r.worst_point[2]);
    for (int k = 0; k < 3; ++k)
        std::printf("  %-12s %.6e\n", comp[k], r.component_max[k]);
}

// newline-delimited key=value files expanded in place of --params-file
std::vector<std::string> expand_params_files(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < args.size(); ++k) {
        std::string path;
        if (args[k] == "--params-file") {
            if (k + 1 >= args.size())
                throw std::invalid_argument("--params-file needs a path");
            path = args[++k];
        } else if (args[k].rfind("--params-file=", 0) == 0) {
            path = args[k].substr(14);
        } else {
            out.push_back(args[k]);
            continue;
        }
        std::ifstream is(path);
        if (!is)
            throw IoError("cannot open params file " + path);
        std::string line;
        while (std::getline(is, line)) {
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos || line[b] == '#')
                continue;
            const auto e = line.find_last_not_of(" \t\r");
            const std::string entry = line.substr(b, e - b + 1);
            if (entry.find('=') == std::string::npos)
                throw std::invalid_argument("params file line is not key=value: " + entry);
            out.push_back("--" + entry);
        }
    }
    return out;
}

int cmd_cases(bool as_json, bool diff, const ParamOpts& popts, const LatticeOpts& lopts) {
    if (diff) {
        const SolutionParams params = resolve_params(popts);
        const TabulatedDiff d = tabulated_diff(params, resolve_lattice(lopts));
        const bool agrees = d.max_abs() <= 1e-12;
        const json out{{"case", case_name(d.tag)},
                       {"points", d.points},
                       {"skipped", d.skipped},
                       {"max_du1", d.max_du1},
                       {"max_du2", d.max_du2},
                       {"max_dp", d.max_dp},
                       {"worst_point", {d.worst_point[0], d.worst_point[1], d.worst_point[2]}},
                       {"agrees", agrees}};
        std::cout << out.dump(2) << '\n';
        return kOk;
    }
    if (as_json) {
        json out = json::array();
        for (const CaseInfo& info : case_catalog())
            out.push_back(json{{"name", info.name},
                               {"constraint", info.constraint},
                               {"f", info.f_form},
                               {"g", info.g_form},
                               {"profile", info.profile_form}});
        std::cout << out.dump(2) << '\n';
        return kOk;
    }
    std::printf("%-8s %-22s %-16s %-30s %s\n", "case", "constraint", "f(t)", "g(t)",
                "profile");
    for (const CaseInfo& info : case_catalog())
        std::printf("%-8s %-22s %-16s %-30s %s\n", info.name, info.constraint, info.f_form,
                    info.g_form, info.profile_form);
    return kOk;
}

int cmd_sample(const ParamOpts& popts, const LatticeOpts& lopts, const std::string& out_path,
               const std::string& format, bool allow_skip, double t_min, double margin,
               bool as_json) {
    const SolutionParams params = resolve_params(popts);
    const SampleLattice lattice = resolve_lattice(lopts);
    EvalDomain domain;
    domain.t_min = t_min;
    domain.margin = margin;
    const SampleResult result =
        sample_records(params, lattice, domain, popts.amplitude, allow_skip);

    if (format == "vtk") {
        if (result.skipped > 0)
            throw DomainError("VTK output needs the whole lattice admissible");
        write_vtk(result.records, lattice, out_path);
    } else {
        write_csv(result.records, out_path);
    }

    if (as_json)
        std::cout << json{{"out", out_path},
                          {"records", result.records.size()},
                          {"skipped", result.skipped}}
                         .dump(2)
                  << '\n';
    else
        std::printf("wrote %zu records to %s (%zu skipped)\n", result.records.size(),
                    out_path.c_str(), result.skipped);
    return kOk;
}

int cmd_residual(const ParamOpts& popts, const LatticeOpts& lopts, const std::string& method,
                 double fd_h, int fd_order, double tol, bool allow_skip, double t_min,
                 double margin, bool as_json) {
    const SolutionParams params = resolve_params(popts);
    const SampleLattice lattice = resolve_lattice(lopts);
    EvalDomain domain;
    domain.t_min = t_min;
    domain.margin = margin;
    const DerivMethod m =
        method == "fd" ? DerivMethod::FiniteDifference : DerivMethod::Analytic;
    const NormReport report =
        residual_norms(params, lattice, m, {fd_h, fd_order}, domain, popts.amplitude);

    if (as_json)
        std::cout << norm_json(report).dump(2) << '\n';
    else
        print_norm_table(report, "euler residual (" + method + ")");

    if (report.skipped > 0 && !allow_skip) {
        std::cerr << report.skipped << " lattice points were outside the solution domain\n";
        return kDomain;
    }
    if (report.evaluated == 0) {
        std::cerr << "no lattice points were admissible\n";
        return kDomain;
    }
    return report.max_abs <= tol ? kOk : kVerify;
}

int cmd_constraints(const ParamOpts& popts, std::size_t points, std::uint64_t seed,
                    double tol, bool relative, const std::vector<double>& box_override,
                    bool as_json) {
    const SolutionParams params = resolve_params(popts);
    SampleBox box = default_sample_box(classify(params));
    if (!box_override.empty()) {
        if (box_override.size() != 6)
            throw std::invalid_argument("--box needs xmin xmax ymin ymax tmin tmax");
        box = {box_override[0], box_override[1], box_override[2],
               box_override[3], box_override[4], box_override[5]};
    }

    NormReport report;
    double sum_sq = 0.0;
    const auto pts = random_admissible_points(params, box, points, seed);
    for (const auto& pt : pts) {
        const auto res = constraint_check(params, pt[0], pt[1], pt[2], relative);
        for (int k = 0; k < 18; ++k) {
            const double a = std::abs(res[k]);
            sum_sq += a * a;
            if (a > report.max_abs) {
                report.max_abs = a;
                report.worst_point = pt;
                report.worst_component = k;
            }
        }
        ++report.evaluated;
    }
    report.l2 =
        pts.empty() ? 0.0 : std::sqrt(sum_sq / (18.0 * static_cast<double>(pts.size())));

    if (as_json)
        std::cout << norm_json(report).dump(2) << '\n';
    else {
        std::printf("constraint residuals over %zu random points\n", pts.size());
        std::printf("  %-12s %.6e\n", "max_abs", report.max_abs);
        std::printf("  %-12s %.6e\n", "l2", report.l2);
        if (report.worst_component >= 0)
            std::printf("  %-12s relation %d at (x=%.6g, y=%.6g, t=%.6g)\n", "worst",
                        report.worst_component + 1, report.worst_point[0],
                        report.worst_point[1], report.worst_point[2]);
    }
    return report.max_abs <= tol ? kOk : kVerify;
}

int cmd_verify_reduction(const ParamOpts& popts, const LatticeOpts& lopts, double t0,
                         double t1, double dt, double tol, bool as_json) {
    const SolutionParams params = resolve_params(popts);
    const SampleLattice lattice = resolve_lattice(lopts);

    double lo_t = t0, hi_t = t1;
    if (lo_t == 0.0 && hi_t == 0.0) {
        lo_t = *std::min_element(lattice.ts.begin(), lattice.ts.end());
        hi_t = *std::max_element(lattice.ts.begin(), lattice.ts.end());
    }
    if (!(hi_t > lo_t)) {
        lo_t -= 5.0 * dt;
        hi_t += 5.0 * dt;
    }

    const TemporalPair start = temporal_coefficients(params, lo_t);
    const FgPaths fg = integrate_fg(params, lo_t, start.f, start.g, hi_t, {dt});

    // induced similarity range over the lattice, padded but clamped so the
    // pad itself cannot cross the profile ODE's singular point
    double z_lo = 1e300, z_hi = -1e300;
    lattice.for_each([&](double x, double y, double t) {
        const double z = fg.f.eval(t) * (x + y) + fg.g.eval(t);
        z_lo = std::min(z_lo, z);
        z_hi = std::max(z_hi, z);
    });
    const double pad = 0.05 * std::max(z_hi - z_lo, 1e-3) + 10.0 * dt;
    double lo = z_lo - pad, hi = z_hi + pad;
    if (params.c1 != 0.0) {
        const double z_star = -params.c2 / params.c1;
        const double standoff = 10.0 * dt * (1.0 + 1e-6);
        if (z_star < z_lo - standoff)
            lo = std::max(lo, z_star + standoff);
        else if (z_star > z_hi + standoff)
            hi = std::min(hi, z_star - standoff);
    }
    z_lo = lo;
    z_hi = hi;

    const double w0 = profile(params, z_lo, popts.amplitude).W;
    const OdePath w_path = integrate_W(params, z_lo, w0, z_hi, {dt});

    const NormReport report = reconstruct_and_verify(fg, w_path, lattice);
    if (as_json)
        std::cout << norm_json(report).dump(2) << '\n';
    else
        print_norm_table(report, "reduction-path Euler residual");
    return report.max_abs <= tol ? kOk : kVerify;
}

int cmd_evolve(const ParamOpts& popts, double x0, double x1, double y0, double y1, int nx,
               int ny, double t0, double t1, double cfl, double poisson_tol,
               int poisson_max_iter, double sor_omega, double div_tol,
               const std::vector<int>& study, int dump_every, const std::string& dump_prefix,
               const std::string& dump_format, bool as_json) {
    EvolveConfig cfg;
    cfg.params = resolve_params(popts);
    cfg.amplitude = popts.amplitude;
    if (!(x1 > x0) || !(y1 > y0))
        throw std::invalid_argument("patch bounds must be increasing");
    cfg.patch = {nx, ny, x0, y0, (x1 - x0) / nx, (y1 - y0) / ny};
    cfg.t0 = t0;
    cfg.t1 = t1;
    cfg.cfl = cfl;
    cfg.poisson_tol = poisson_tol;
    cfg.poisson_max_iter = poisson_max_iter;
    cfg.sor_omega = sor_omega;

    if (!study.empty()) {
        const ConvergenceReport rep = convergence_study(cfg, study);
        if (as_json) {
            json rows = json::array();
            for (const auto& row : rep.rows)
                rows.push_back(json{
                    {"n", row.n},
                    {"h", row.h},
                    {"l2_u", row.l2_u},
                    {"pair_order", std::isnan(row.pair_order) ? json() : json(row.pair_order)},
                    {"max_div", row.max_div}});
            std::cout << json{{"rows", rows},
                              {"observed_order", rep.observed_order},
                              {"worst_div", rep.worst_div},
                              {"degraded", rep.degraded},
                              {"poisson_tol", rep.poisson_tol}}
                             .dump(2)
                      << '\n';
        } else {
            std::printf("%-8s %-12s %-14s %-12s %s\n", "n", "h", "l2_u", "pair_order",
                        "max_div");
            for (const auto& row : rep.rows)
                std::printf("%-8d %-12.6g %-14.6e %-12.3f %.3e\n", row.n, row.h, row.l2_u,
                            row.pair_order, row.max_div);
            std::printf("observed order %.3f%s\n", rep.observed_order,
                        rep.degraded ? "  [degraded]" : "");
        }
        return rep.degraded ? kVerify : kOk;
    }

    EvolveState st = init_from_solution(cfg);
    const BoundaryFn bnd = exact_boundary(cfg.params, cfg.amplitude);
    int steps = 0;
    double max_div = 0.0;
    long iters = 0;

    auto dump_state = [&](const EvolveState& s) {
        const PatchGrid& g = s.grid;
        SampleLattice cells{g.center_x(0), g.center_x(g.nx - 1), g.nx,
                            g.center_y(0),  g.center_y(g.ny - 1), g.ny,
                            {s.t}};
        std::vector<FieldRecord> records;
        records.reserve(static_cast<std::size_t>(g.nx) * g.ny);
        const TemporalPair pair = temporal_coefficients(cfg.params, s.t);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                FieldRecord r;
                r.x = g.center_x(i);
                r.y = g.center_y(j);
                r.t = s.t;
                r.u1 = 0.5 * (s.u1_at(i, j) + s.u1_at(i + 1, j));
                r.u2 = 0.5 * (s.u2_at(i, j) + s.u2_at(i, j + 1));
                r.p = s.p_at(i, j);
                r.div = (s.u1_at(i + 1, j) - s.u1_at(i, j)) / g.dx +
                        (s.u2_at(i, j + 1) - s.u2_at(i, j)) / g.dy;
                const double dv_dx =
                    (s.u2_at(std::min(i + 1, g.nx - 1), j) - s.u2_at(std::max(i - 1, 0), j)) /
                    (2.0 * g.dx);
                const double du_dy =
                    (s.u1_at(i, std::min(j + 1, g.ny - 1)) - s.u1_at(i, std::max(j - 1, 0))) /
                    (2.0 * g.dy);
                r.vort = dv_dx - du_dy;
                r.z = similarity_z(pair, r.x, r.y);
                records.push_back(r);
            }
        const std::string path =
            dump_prefix + "_" + std::to_string(steps) + "." + dump_format;
        if (dump_format == "vtk")
            write_vtk(records, cells, path);
        else
            write_csv(records, path);
    };

    if (dump_every > 0)
        dump_state(st);
    const double t_slack = 1e-12 * std::max(1.0, std::abs(cfg.t1));
    while (st.t < cfg.t1 - t_slack) {
        step_with_boundary(st, cfg, bnd, cfg.t1 - st.t);
        ++steps;
        max_div = std::max(max_div, st.last_max_div);
        iters += st.last_poisson_iters;
        if (dump_every > 0 && steps % dump_every == 0)
            dump_state(st);
    }

    RunReport rep = compare_state(st, cfg);
    rep.steps = steps;
    rep.max_div = max_div;
    rep.poisson_iters_total = iters;

    if (as_json)
        std::cout << json{{"l2_u", rep.l2_u},
                          {"max_u", rep.max_u},
                          {"l2_p_gauge_free", rep.l2_p_gauge_free},
                          {"steps", rep.steps},
                          {"max_div", rep.max_div},
                          {"t_final", rep.t_final}}
                         .dump(2)
                  << '\n';
    else {
        std::printf("evolution %s, %d steps to t = %.6g\n", case_name(classify(cfg.params)),
                    rep.steps, rep.t_final);
        std::printf("  %-18s %.6e\n", "l2_u", rep.l2_u);
        std::printf("  %-18s %.6e\n", "max_u", rep.max_u);
        std::printf("  %-18s %.6e\n", "l2_p_gauge_free", rep.l2_p_gauge_free);
        std::printf("  %-18s %.6e\n", "max_div", rep.max_div);
    }
    return rep.max_div <= div_tol ? kOk : kVerify;
}

int run_cli(std::vector<std::string> args) {
    CLI::App app{"verification laboratory for exact similarity solutions of the 2D "
                 "incompressible Euler equations"};
    app.require_subcommand(1);

    ParamOpts popts;
    LatticeOpts lopts;
    bool as_json = false;
    bool diff = false;

    auto* cases = app.add_subcommand("cases", "list the five solution families");
    add_param_opts(cases, popts);
    add_lattice_opts(cases, lopts);
    cases->add_flag("--json", as_json, "emit JSON");
    cases->add_flag("--diff", diff,
                    "compare the tabulated per-case formulas against the composed "
                    "evaluator over the lattice");

    auto* sample = app.add_subcommand("sample", "evaluate a case solution over a lattice");
    std::string out_path, format = "csv";
    bool allow_skip = false;
    double t_min = 1e-3, margin = 0.0;
    add_param_opts(sample, popts);
    add_lattice_opts(sample, lopts);
    sample->add_option("--out", out_path, "output path")->required();
    sample->add_option("--format", format, "csv or vtk")->check(CLI::IsMember({"csv", "vtk"}));
    sample->add_flag("--allow-skip", allow_skip,
                     "omit inadmissible points instead of failing");
    sample->add_option("--t-min", t_min, "smallest admissible time for families with a pole");
    sample->add_option("--margin", margin, "required clearance of the power-law base");
    sample->add_flag("--json", as_json, "emit a JSON summary");

    auto* residual = app.add_subcommand("residual", "Euler residual norms over a lattice");
    std::string method = "analytic";
    double fd_h = 0.0;
    int fd_order = 4;
    double tol = 1e-10;
    add_param_opts(residual, popts);
    add_lattice_opts(residual, lopts);
    residual->add_option("--method", method, "analytic (jets) or fd")
        ->check(CLI::IsMember({"analytic", "fd"}));
    residual->add_option("--fd-h", fd_h, "finite-difference step (0 = automatic)");
    residual->add_option("--fd-order", fd_order, "stencil order, 2 or 4")
        ->check(CLI::IsMember({2, 4}));
    residual->add_option("--tol", tol, "pass threshold on max_abs (default 1e-10)");
    residual->add_flag("--allow-skip", allow_skip, "tolerate inadmissible lattice points");
    residual->add_option("--t-min", t_min, "smallest admissible time");
    residual->add_option("--margin", margin, "required clearance of the power-law base");
    residual->add_flag("--json", as_json, "emit JSON");

    auto* constraints =
        app.add_subcommand("constraints", "the 18 reduction constraints at random points");
    std::size_t points = 200;
    std::uint64_t seed = 12345;
    bool relative = false;
    std::vector<double> box_override;
    double ctol = 1e-10;
    add_param_opts(constraints, popts);
    constraints->add_option("--points", points, "number of random admissible points");
    constraints->add_option("--seed", seed, "RNG seed");
    constraints->add_option("--tol", ctol, "pass threshold on max_abs (default 1e-10)");
    constraints->add_flag("--relative", relative, "divide by max(|LHS|, |RHS|, 1)");
    constraints
        ->add_option("--box", box_override, "sampling box: xmin xmax ymin ymax tmin tmax")
        ->expected(6);
    constraints->add_flag("--json", as_json, "emit JSON");

    auto* verify = app.add_subcommand(
        "verify-reduction", "integrate the reduced ODEs and verify the Euler residual");
    double vr_t0 = 0.0, vr_t1 = 0.0, vr_dt = 1e-3, vr_tol = 1e-6;
    add_param_opts(verify, popts);
    add_lattice_opts(verify, lopts);
    verify->add_option("--t0", vr_t0, "integration start (default: lattice time range)");
    verify->add_option("--t1", vr_t1, "integration end");
    verify->add_option("--dt", vr_dt, "RK4 step (default 1e-3)");
    verify->add_option("--tol", vr_tol, "pass threshold on max_abs (default 1e-6)");
    verify->add_flag("--json", as_json, "emit JSON");

    auto* evolve = app.add_subcommand(
        "evolve", "evolve a bounded patch with boundary data from the exact solution");
    double ev_x0 = 0.0, ev_x1 = 1.0, ev_y0 = 0.0, ev_y1 = 1.0;
    int ev_nx = 32, ev_ny = 32;
    double ev_t0 = 0.0, ev_t1 = 0.1, ev_cfl = 0.5;
    double poisson_tol = 1e-10;
    int poisson_max_iter = 50000;
    double sor_omega = 1.7, div_tol = 1e-8;
    std::vector<int> study;
    int dump_every = 0;
    std::string dump_prefix = "evolve", dump_format = "csv";
    add_param_opts(evolve, popts);
    evolve->add_option("--x0", ev_x0, "patch lower x bound");
    evolve->add_option("--x1", ev_x1, "patch upper x bound");
    evolve->add_option("--y0", ev_y0, "patch lower y bound");
    evolve->add_option("--y1", ev_y1, "patch upper y bound");
    evolve->add_option("--nx", ev_nx, "cells along x");
    evolve->add_option("--ny", ev_ny, "cells along y");
    evolve->add_option("--t0", ev_t0, "start time");
    evolve->add_option("--t1", ev_t1, "end time");
    evolve->add_option("--cfl", ev_cfl, "CFL number in (0, 0.9]");
    evolve->add_option("--poisson-tol", poisson_tol, "SOR relative tolerance");
    evolve->add_option("--poisson-max-iter", poisson_max_iter, "SOR iteration cap");
    evolve->add_option("--sor-omega", sor_omega, "SOR relaxation factor");
    evolve->add_option("--div-tol", div_tol, "post-projection divergence bound");
    evolve->add_option("--study", study, "convergence study over square resolutions")
        ->expected(-1);
    evolve->add_option("--dump-every", dump_every, "dump fields every N steps (0 = off)");
    evolve->add_option("--dump-prefix", dump_prefix, "dump file prefix");
    evolve->add_option("--dump-format", dump_format, "csv or vtk")
        ->check(CLI::IsMember({"csv", "vtk"}));
    evolve->add_flag("--json", as_json, "emit JSON");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (cases->parsed())
        return cmd_cases(as_json, diff, popts, lopts);
    if (sample->parsed())
        return cmd_sample(popts, lopts, out_path, format, allow_skip, t_min, margin, as_json);
    if (residual->parsed())
        return cmd_residual(popts, lopts, method, fd_h, fd_order, tol, allow_skip, t_min,
                            margin, as_json);
    if (constraints->parsed())
        return cmd_constraints(popts, points, seed, ctol, relative, box_override, as_json);
    if (verify->parsed())
        return cmd_verify_reduction(popts, lopts, vr_t0, vr_t1, vr_dt, vr_tol, as_json);
    if (evolve->parsed())
        return cmd_evolve(popts, ev_x0, ev_x1, ev_y0, ev_y1, ev_nx, ev_ny, ev_t0, ev_t1,
                          ev_cfl, poisson_tol, poisson_max_iter, sor_omega, div_tol, study,
                          dump_every, dump_prefix, dump_format, as_json);
    return kUsage;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_cli(expand_params_files(args));
    } catch (const ConvergenceError& e) {
        std::cerr << "solver did not converge: " << e.what() << '\n';
        return kSolver;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
