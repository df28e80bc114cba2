#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "s3torus/clifford.hpp"
#include "s3torus/common.hpp"
#include "s3torus/mechanics.hpp"
#include "s3torus/periodicity.hpp"
#include "s3torus/surface.hpp"

namespace s3torus {

/// Parameters of one mesh/verification run. Exactly one of energy and
/// deformation must be given (they are redundant via E = 1/(2 sqrt(1+e^2))).
struct RunConfig {
    int k = 0, l = 1;
    std::optional<double> energy;
    std::optional<double> deformation;
    double phi0 = 0.0;
    int grid1 = 64, grid2 = 64;
    double tol = 1e-10;
    std::optional<std::pair<int, int>> closure;  // (p, q) to close an ODE-chart mesh
    Vec4 pole{{0.0, 0.0, 0.0, -1.0}};

    void validate() const {
        if (energy.has_value() == deformation.has_value()) {
            throw DomainError("RunConfig: exactly one of energy and deformation must be set");
        }
        if (grid1 < 3 || grid2 < 3) throw DomainError("RunConfig: grid resolution must be >= 3");
        if (!(tol > 0.0)) throw DomainError("RunConfig: tol must be positive");
        resolved_params().validate();
    }

    double resolved_energy() const {
        return energy ? *energy : energy_from_deformation(*deformation);
    }
    double resolved_deformation() const {
        return deformation ? *deformation : deformation_from_energy(*energy);
    }
    TorusParams resolved_params() const { return {k, l, resolved_energy()}; }
};

/// Lattice of surface points with quad connectivity. Row-major indexing
/// (vertex (i1, i2) at i2*n1 + i1). Wrapping dimensions cover [0, L) with n
/// points; open dimensions cover [0, L] and drop the closing quad strip, in
/// which case the mesh is an "open-strip" sample of a non-closing surface.
struct SurfaceMesh {
    int n1 = 0, n2 = 0;
    bool wrap1 = true, wrap2 = true;
    std::vector<Vec4> vertices;
    std::vector<double> phi1, phi2, theta;
    std::vector<std::array<int, 4>> faces;

    SurfaceChart chart = SurfaceChart::constant(1, 1, kPi / 4.0);
    TorusParams params;
    double e = 0.0;
    std::string chart_kind;  // "constant" | "closed-form" | "ode"
    std::string domain;      // "torus" | "open-strip"
    std::optional<std::pair<int, int>> closure;
};

inline SurfaceMesh generate_mesh(const RunConfig& config) {
    config.validate();
    const TorusParams params = config.resolved_params();
    const double e = config.resolved_deformation();

    SurfaceMesh mesh;
    mesh.params = params;
    mesh.e = e;
    mesh.n1 = config.grid1;
    mesh.n2 = config.grid2;
    mesh.closure = config.closure;

    double len1 = 2.0 * kPi, len2 = 2.0 * kPi;
    if (params.energy == 0.5) {
        mesh.chart = SurfaceChart::constant(params.k, params.l, kPi / 4.0);
        mesh.chart_kind = "constant";
        mesh.domain = "torus";
    } else if (params.k == params.l) {
        mesh.chart = closed_form_chart(CliffordParams{e, config.phi0, params.k});
        mesh.chart_kind = "closed-form";
        mesh.domain = "torus";
    } else {
        if (config.closure && params.k != 0 && params.l != 0) {
            // A product lattice only wraps cleanly when theta depends on one
            // angle alone; mixed-winding closed meshes are not supported.
            throw DomainError("generate_mesh: closure data requires k = 0 or l = 0");
        }
        const double delta = period_quadrature(params, e, 1e-13).delta_phi2;
        const ThetaProfile profile = integrate_theta(params, 1.01 * delta, config.tol);
        mesh.chart = SurfaceChart::from_profile(profile);
        mesh.chart_kind = "ode";
        const int n_osc = config.closure
                              ? ((config.closure->first % 2 == 0) ? config.closure->second
                                                                  : 2 * config.closure->second)
                              : 1;
        const double span_t = n_osc * delta;
        if (params.l != 0) {
            len2 = span_t / std::abs(params.l);
            mesh.wrap2 = config.closure.has_value();
            mesh.domain = config.closure ? "torus" : "open-strip";
        } else {
            len1 = span_t / std::abs(params.k);
            mesh.wrap1 = config.closure.has_value();
            mesh.domain = config.closure ? "torus" : "open-strip";
        }
    }

    const double step1 = mesh.wrap1 ? len1 / mesh.n1 : len1 / (mesh.n1 - 1);
    const double step2 = mesh.wrap2 ? len2 / mesh.n2 : len2 / (mesh.n2 - 1);

    mesh.vertices.reserve(static_cast<std::size_t>(mesh.n1) * mesh.n2);
    for (int i2 = 0; i2 < mesh.n2; ++i2) {
        for (int i1 = 0; i1 < mesh.n1; ++i1) {
            const double p1 = i1 * step1;
            const double p2 = i2 * step2;
            const Vec4 x = embed_point(p1, p2, mesh.chart);
            if (std::fabs(x.norm() - 1.0) > 1e-10) {
                throw ToleranceError("generate_mesh: vertex off the unit sphere");
            }
            mesh.vertices.push_back(x);
            mesh.phi1.push_back(p1);
            mesh.phi2.push_back(p2);
            mesh.theta.push_back(mesh.chart.theta_at(p1, p2).theta);
        }
    }

    const int f1 = mesh.wrap1 ? mesh.n1 : mesh.n1 - 1;
    const int f2 = mesh.wrap2 ? mesh.n2 : mesh.n2 - 1;
    mesh.faces.reserve(static_cast<std::size_t>(f1) * f2);
    for (int i2 = 0; i2 < f2; ++i2) {
        for (int i1 = 0; i1 < f1; ++i1) {
            const int j1 = (i1 + 1) % mesh.n1;
            const int j2 = (i2 + 1) % mesh.n2;
            mesh.faces.push_back({i2 * mesh.n1 + i1, i2 * mesh.n1 + j1, j2 * mesh.n1 + j1,
                                  j2 * mesh.n1 + i1});
        }
    }
    return mesh;
}

/// Stereographic projection from a unit pole onto the hyperplane orthogonal
/// to it: x' = (x - (x.pole) pole)/(1 - x.pole) expressed in a deterministic
/// orthonormal basis of pole-perp. For the default pole (0,0,0,-1) this is
/// (x1, x2, x3)/(1 + x4).
inline std::vector<Vec3> stereographic_project(const SurfaceMesh& mesh, const Vec4& pole) {
    if (std::fabs(pole.norm() - 1.0) > 1e-9) {
        throw DomainError("stereographic_project: pole must lie on the unit sphere");
    }

    // Basis: drop the standard axis most aligned with the pole, orthonormalize
    // the remaining three against the pole (and each other).
    int drop = 0;
    for (int i = 1; i < 4; ++i) {
        if (std::fabs(pole[i]) > std::fabs(pole[drop])) drop = i;
    }
    std::array<Vec4, 3> basis;
    int nb = 0;
    for (int axis = 0; axis < 4; ++axis) {
        if (axis == drop) continue;
        Vec4 b{};
        b[axis] = 1.0;
        b = b - pole * b.dot(pole);
        for (int j = 0; j < nb; ++j) b = b - basis[j] * b.dot(basis[j]);
        basis[nb] = b * (1.0 / b.norm());
        ++nb;
    }

    std::vector<Vec3> out;
    out.reserve(mesh.vertices.size());
    for (const Vec4& x : mesh.vertices) {
        const double denom = 1.0 - x.dot(pole);
        if (std::fabs(denom) < 1e-6) {
            throw PoleProximityError("stereographic_project: vertex too close to the pole");
        }
        const Vec4 planar = x - pole * x.dot(pole);
        out.push_back({planar.dot(basis[0]) / denom, planar.dot(basis[1]) / denom,
                       planar.dot(basis[2]) / denom});
    }
    return out;
}

namespace detail {

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

/// Wavefront OBJ subset: stereographically projected vertices (`v`) and quad
/// faces (`f`, 1-based), ASCII with LF line endings and 17-significant-digit
/// floats so a reparse reproduces the doubles bit-exactly.
inline void export_obj(const SurfaceMesh& mesh, const Vec4& pole, std::ostream& os) {
    const std::vector<Vec3> pts = stereographic_project(mesh, pole);
    for (const Vec3& p : pts) {
        os << "v " << detail::fmt17(p.x) << ' ' << detail::fmt17(p.y) << ' '
           << detail::fmt17(p.z) << '\n';
    }
    for (const auto& f : mesh.faces) {
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << '\n';
    }
}

/// CSV of the raw 4D vertices with chart coordinates.
inline void export_csv(const SurfaceMesh& mesh, std::ostream& os) {
    os << "phi1,phi2,theta,x1,x2,x3,x4\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec4& x = mesh.vertices[i];
        os << detail::fmt17(mesh.phi1[i]) << ',' << detail::fmt17(mesh.phi2[i]) << ','
           << detail::fmt17(mesh.theta[i]) << ',' << detail::fmt17(x[0]) << ','
           << detail::fmt17(x[1]) << ',' << detail::fmt17(x[2]) << ',' << detail::fmt17(x[3])
           << '\n';
    }
}

}  // namespace s3torus
