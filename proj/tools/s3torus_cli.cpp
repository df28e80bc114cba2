// Command-line interface over the torus family: pointwise embedding,
// verification sweeps, period/closure analysis and mesh export.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s3torus/s3torus.hpp"

namespace {

using namespace s3torus;

struct FamilyOpts {
    int k = 0, l = 1;
    std::optional<double> energy;
    std::optional<double> deformation;
    double phi0 = 0.0;
};

void add_family_options(CLI::App* cmd, FamilyOpts& opts, bool with_phi0 = true) {
    cmd->add_option("--k", opts.k, "winding number k");
    cmd->add_option("--l", opts.l, "winding number l");
    auto* oe = cmd->add_option("--E", opts.energy, "mechanical energy E in (0, 1/2]");
    auto* od = cmd->add_option("--e", opts.deformation, "deformation e = sinh(gamma) >= 0");
    oe->excludes(od);
    od->excludes(oe);
    if (with_phi0) cmd->add_option("--phi0", opts.phi0, "phase offset of the closed form");
}

TorusParams resolve_params(const FamilyOpts& o) {
    if (o.energy.has_value() == o.deformation.has_value()) {
        throw DomainError("exactly one of --E and --e must be given");
    }
    const double energy = o.energy ? *o.energy : energy_from_deformation(*o.deformation);
    TorusParams p{o.k, o.l, energy};
    p.validate();
    return p;
}

SurfaceChart make_chart(const TorusParams& p, double phi0, double tol) {
    if (p.energy == 0.5) return SurfaceChart::constant(p.k, p.l, kPi / 4.0);
    if (p.k == p.l) return closed_form_chart(CliffordParams{p.deformation(), phi0, p.k});
    const double delta = period_quadrature(p, p.deformation(), 1e-13).delta_phi2;
    return SurfaceChart::from_profile(integrate_theta(p, 1.01 * delta, tol));
}

Vec4 parse_pole(const std::vector<double>& raw) {
    if (raw.empty()) return {{0.0, 0.0, 0.0, -1.0}};
    if (raw.size() != 4) throw DomainError("--pole needs four components");
    Vec4 pole{{raw[0], raw[1], raw[2], raw[3]}};
    if (pole.norm() == 0.0) throw DomainError("--pole must be nonzero");
    return pole * (1.0 / pole.norm());
}

int run(int argc, char** argv) {
    CLI::App app{"minimal tori in the 3-sphere: travelling-wave solutions, "
                 "closed forms, periods and mesh export"};
    app.require_subcommand(1);

    // embed
    auto* embed = app.add_subcommand("embed", "evaluate one surface point");
    FamilyOpts eo;
    double phi1 = 0.0, phi2 = 0.0;
    double embed_tol = 1e-10;
    add_family_options(embed, eo);
    embed->add_option("--phi1", phi1, "first angle");
    embed->add_option("--phi2", phi2, "second angle");
    embed->add_option("--tol", embed_tol, "integrator tolerance for ODE charts");

    // verify
    auto* verify = app.add_subcommand("verify", "residual sweep over a mesh");
    FamilyOpts vo;
    int vgrid = 64;
    double vtol = 1e-10, vmax = 1e-8;
    std::string vout;
    add_family_options(verify, vo);
    verify->add_option("--grid", vgrid, "grid resolution per direction");
    verify->add_option("--tol", vtol, "integrator tolerance");
    verify->add_option("--max-residual", vmax, "largest acceptable minimality residual");
    verify->add_option("--out", vout, "write the JSON report here (stdout otherwise)");

    // period
    auto* period = app.add_subcommand("period", "angle advance per theta-oscillation");
    FamilyOpts po;
    std::string pmethod = "quadrature";
    double ptol = 1e-12;
    add_family_options(period, po, false);
    period->add_option("--method", pmethod, "quadrature | elliptic")
        ->check(CLI::IsMember({"quadrature", "elliptic"}));
    period->add_option("--tol", ptol, "quadrature tolerance");

    // search
    auto* search = app.add_subcommand("search", "deformation with period (p/q)*pi");
    FamilyOpts so;
    int sp = 4, sq = 3;
    double stol = 1e-10;
    bool scheck = false;
    so.deformation = 0.0;  // search varies e; family fixed by (k, l)
    search->add_option("--k", so.k, "winding number k");
    search->add_option("--l", so.l, "winding number l");
    search->add_option("--p", sp, "period target numerator")->required();
    search->add_option("--q", sq, "period target denominator")->required();
    search->add_option("--tol", stol, "period tolerance");
    search->add_flag("--check-closure", scheck, "verify the closure of the found surface");

    // isometry
    auto* isom = app.add_subcommand("isometry", "flatness of the k = l family");
    double ie = 1.0, itol = 1e-9;
    int isamples = 10000;
    isom->add_option("--e", ie, "deformation")->required();
    isom->add_option("--samples", isamples, "sample count");
    isom->add_option("--tol", itol, "largest acceptable deviation");

    // mesh
    auto* meshc = app.add_subcommand("mesh", "sample and export the surface");
    FamilyOpts mo;
    int mgrid = 64;
    double mtol = 1e-10;
    std::string mout = "torus.obj", mformat = "obj";
    std::vector<double> mpole;
    int mp = 0, mq = 0;
    add_family_options(meshc, mo);
    meshc->add_option("--grid", mgrid, "grid resolution per direction");
    meshc->add_option("--tol", mtol, "integrator tolerance");
    meshc->add_option("--out", mout, "output path");
    meshc->add_option("--format", mformat, "obj | csv | json-report")
        ->check(CLI::IsMember({"obj", "csv", "json-report"}));
    meshc->add_option("--pole", mpole, "stereographic pole (four components)")->expected(4);
    meshc->add_option("--p", mp, "closure numerator");
    meshc->add_option("--q", mq, "closure denominator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (embed->parsed()) {
        const TorusParams p = resolve_params(eo);
        const SurfaceChart chart = make_chart(p, eo.phi0, embed_tol);
        const ThetaJet jet = chart.theta_at(phi1, phi2);
        const Vec4 x = embed_point(phi1, phi2, chart);
        std::printf("theta = %.17g\n", jet.theta);
        std::printf("x = (%.17g, %.17g, %.17g, %.17g)\n", x[0], x[1], x[2], x[3]);
        std::printf("|x| - 1 = %.3e\n", x.norm() - 1.0);
        return 0;
    }

    if (verify->parsed()) {
        RunConfig cfg;
        const TorusParams p = resolve_params(vo);
        cfg.k = p.k;
        cfg.l = p.l;
        cfg.energy = p.energy;
        cfg.phi0 = vo.phi0;
        cfg.grid1 = cfg.grid2 = vgrid;
        cfg.tol = vtol;
        const SurfaceMesh mesh = generate_mesh(cfg);
        const VerificationReport rep = evaluate_mesh(mesh, false);
        const nlohmann::json j = to_json(rep);
        if (vout.empty()) {
            std::cout << j.dump(2) << '\n';
        } else {
            std::ofstream os(vout);
            if (!os) throw std::runtime_error("cannot open " + vout);
            os << j.dump(2) << '\n';
            std::printf("report written to %s\n", vout.c_str());
        }
        if (rep.max_minimality_residual > vmax) {
            std::fprintf(stderr, "minimality residual %.3e exceeds %.3e\n",
                         rep.max_minimality_residual, vmax);
            return 3;
        }
        return 0;
    }

    if (period->parsed()) {
        const TorusParams p = resolve_params(po);
        PeriodResult r;
        if (pmethod == "elliptic") {
            if (p.k != 0 || p.l != 1) {
                throw DomainError("the elliptic closed form covers k = 0, l = 1");
            }
            r = period_elliptic(p.energy);
        } else {
            r = period_quadrature(p, p.deformation(), ptol);
        }
        std::printf("delta_phi2 = %.17g\n", r.delta_phi2);
        std::printf("ratio_to_pi = %.17g\n", r.ratio_to_pi);
        if (r.rational) {
            std::printf("rational: %ld/%ld\n", r.p, r.q);
        } else {
            std::printf("rational: no p/q with q <= 64 within 1e-9\n");
        }
        return 0;
    }

    if (search->parsed()) {
        const TorusParams p{so.k, so.l, 0.5};
        p.validate();
        const double estar = search_rational_period(p, sp, sq, stol);
        const PeriodResult r = period_quadrature(p, estar, 1e-13);
        std::printf("e_star = %.17g\n", estar);
        std::printf("E_star = %.17g\n", energy_from_deformation(estar));
        std::printf("period = %.17g  ((p/q)*pi = %.17g)\n", r.delta_phi2,
                    (static_cast<double>(sp) / sq) * kPi);
        if (scheck) {
            const ClosureResult c = closure_check(p, estar, sp, sq);
            std::printf("closure: %s (max mismatch %.3e)\n", c.closed ? "closed" : "open",
                        c.max_mismatch);
            if (!c.closed) return 3;
        }
        return 0;
    }

    if (isom->parsed()) {
        const CliffordParams cp{ie, 0.0, 1};
        const double dev = verify_isometry(cp, isamples);
        const double res = verify_minimal_closed_form(cp, isamples);
        std::printf("max |2g - J^T J| = %.3e\n", dev);
        std::printf("max |minimality residual| = %.3e\n", res);
        if (dev > itol) {
            std::fprintf(stderr, "isometry deviation exceeds %.3e\n", itol);
            return 3;
        }
        return 0;
    }

    if (meshc->parsed()) {
        RunConfig cfg;
        const TorusParams p = resolve_params(mo);
        cfg.k = p.k;
        cfg.l = p.l;
        cfg.energy = p.energy;
        cfg.phi0 = mo.phi0;
        cfg.grid1 = cfg.grid2 = mgrid;
        cfg.tol = mtol;
        cfg.pole = parse_pole(mpole);
        if (mp > 0 && mq > 0) cfg.closure = std::make_pair(mp, mq);
        const SurfaceMesh mesh = generate_mesh(cfg);

        std::ofstream os(mout, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open " + mout);
        if (mformat == "obj") {
            export_obj(mesh, cfg.pole, os);
        } else if (mformat == "csv") {
            export_csv(mesh, os);
        } else {
            export_json_report(mesh, os);
        }
        std::printf("%s mesh (%d x %d, %zu faces, %s) written to %s\n", mesh.chart_kind.c_str(),
                    mesh.n1, mesh.n2, mesh.faces.size(), mesh.domain.c_str(), mout.c_str());
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const DomainError& err) {
        std::fprintf(stderr, "parameter error: %s\n", err.what());
        return 2;
    } catch (const NoSolutionError& err) {
        std::fprintf(stderr, "parameter error: %s\n", err.what());
        return 2;
    } catch (const ToleranceError& err) {
        std::fprintf(stderr, "tolerance failure: %s\n", err.what());
        return 3;
    } catch (const PoleProximityError& err) {
        std::fprintf(stderr, "parameter error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
}
