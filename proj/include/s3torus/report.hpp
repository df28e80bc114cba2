#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "s3torus/mesh.hpp"
#include "s3torus/periodicity.hpp"

namespace s3torus {

/// Residual maxima over the vertices of a mesh, plus period/closure data.
struct VerificationReport {
    TorusParams params;
    double e = 0;
    std::string chart_kind;
    std::string domain;

    double max_minimality_residual = 0;
    double max_energy_residual = 0;
    double gaussian_R_max_abs = 0;
    double max_norm_deviation = 0;
    double max_ratio_h_over_g_deviation = 0;  // |det h/det g + 1|, k = l charts only

    std::optional<PeriodResult> period;
    std::optional<std::pair<int, int>> closure_requested;
    std::optional<ClosureResult> closure;
};

inline VerificationReport evaluate_mesh(const SurfaceMesh& mesh, bool run_closure_check = true) {
    VerificationReport rep;
    rep.params = mesh.params;
    rep.e = mesh.e;
    rep.chart_kind = mesh.chart_kind;
    rep.domain = mesh.domain;

    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const double p1 = mesh.phi1[i], p2 = mesh.phi2[i];
        const CurvatureReport cr = curvature_report(p1, p2, mesh.chart);
        rep.max_minimality_residual =
            std::max(rep.max_minimality_residual, std::fabs(cr.mean_curvature_residual));
        rep.gaussian_R_max_abs = std::max(rep.gaussian_R_max_abs, std::fabs(cr.gaussian_R));
        rep.max_norm_deviation =
            std::max(rep.max_norm_deviation, std::fabs(mesh.vertices[i].norm() - 1.0));
        if (mesh.params.k == mesh.params.l) {
            rep.max_ratio_h_over_g_deviation =
                std::max(rep.max_ratio_h_over_g_deviation, std::fabs(cr.ratio_h_over_g + 1.0));
        }
        const ThetaJet jet = mesh.chart.theta_at(p1, p2);
        rep.max_energy_residual = std::max(
            rep.max_energy_residual,
            std::fabs(jet.theta_dot * jet.theta_dot + potential(jet.theta, mesh.params)));
    }

    rep.period = period_quadrature(mesh.params, mesh.e, 1e-12);
    rep.closure_requested = mesh.closure;
    if (mesh.closure && run_closure_check) {
        rep.closure = closure_check(mesh.params, mesh.e, mesh.closure->first, mesh.closure->second);
    }
    return rep;
}

inline nlohmann::json to_json(const VerificationReport& rep) {
    nlohmann::json j;
    j["params"] = {{"k", rep.params.k},
                   {"l", rep.params.l},
                   {"E", rep.params.energy},
                   {"e", rep.e},
                   {"chart", rep.chart_kind},
                   {"domain", rep.domain}};
    j["max_minimality_residual"] = rep.max_minimality_residual;
    j["max_energy_residual"] = rep.max_energy_residual;
    j["gaussian_R_max_abs"] = rep.gaussian_R_max_abs;
    j["max_norm_deviation"] = rep.max_norm_deviation;
    if (rep.params.k == rep.params.l) {
        j["max_ratio_h_over_g_deviation"] = rep.max_ratio_h_over_g_deviation;
    }
    if (rep.period) {
        j["period"] = {{"delta_phi2", rep.period->delta_phi2},
                       {"ratio_to_pi", rep.period->ratio_to_pi},
                       {"method", rep.period->method == PeriodMethod::quadrature ? "quadrature"
                                                                                 : "elliptic"},
                       {"rational", rep.period->rational},
                       {"p", rep.period->p},
                       {"q", rep.period->q}};
    }
    if (rep.closure_requested) {
        nlohmann::json c;
        c["p"] = rep.closure_requested->first;
        c["q"] = rep.closure_requested->second;
        if (rep.closure) {
            c["closed"] = rep.closure->closed;
            c["max_mismatch"] = rep.closure->max_mismatch;
        }
        j["closure"] = c;
    }
    return j;
}

inline void export_json_report(const SurfaceMesh& mesh, std::ostream& os) {
    os << to_json(evaluate_mesh(mesh)).dump(2) << '\n';
}

}  // namespace s3torus
