#pragma once

#include <cmath>

#include "s3torus/common.hpp"
#include "s3torus/mechanics.hpp"
#include "s3torus/surface.hpp"

namespace s3torus {

/// rho^2 = (k^2 sin^2 theta + l^2 cos^2 theta)/(k^2 + l^2)
inline double conformal_factor(double theta, int k, int l) {
    if (k == 0 && l == 0) throw DomainError("conformal_factor: (k, l) = (0, 0)");
    return kl_weight(theta, k, l) / (static_cast<double>(k) * k + static_cast<double>(l) * l);
}

/// Pointwise isothermal decomposition g = rho^2 J^T J with
/// J = [[1 + k u, l u], [k v, 1 + l v]] on the energy shell.
struct IsothermalSolution {
    double rho_squared = 0;
    double u = 0;
    double v = 0;
    double Y = 0;  // Y(theta) = -V_E(theta) = theta_dot^2 on the shell
};

/// Shell metric in the decomposed form diag(c^2, s^2) + [[k^2, kl], [kl, l^2]] Y.
inline Mat2 metric_from_decomposition(double theta, const TorusParams& p) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double Y = -potential(theta, p);
    const double k = p.k, l = p.l;
    return Mat2{c * c, 0.0, 0.0, s * s} + Mat2{k * k, k * l, k * l, l * l} * Y;
}

namespace detail {

struct Eq31Residuals {
    double r1 = 0, r2 = 0, r3 = 0;
};

inline Eq31Residuals isothermal_residuals(double theta, const TorusParams& p, double u, double v) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double Y = -potential(theta, p);
    const double k = p.k, l = p.l;
    const double rho2 = conformal_factor(theta, p.k, p.l);
    const double s2uv = u * u + v * v;
    return {c * c + k * k * Y - (1.0 + k * k * s2uv + 2.0 * k * u) * rho2,
            s * s + l * l * Y - (1.0 + l * l * s2uv + 2.0 * l * v) * rho2,
            k * l * Y - (l * u + k * v + k * l * s2uv) * rho2};
}

}  // namespace detail

/// Solves the three component equations of g = rho^2 J^T J for (u, v).
/// Subtracting k^2 * (second) from l^2 * (first) eliminates the quadratic
/// terms and gives the linear relation l u - k v = k l (c^2 - s^2)/(k^2 s^2 + l^2 c^2);
/// substituting it into the mixed equation leaves a quadratic whose two roots
/// correspond to det J = +- sqrt(det g)/rho^2. The orientation-preserving
/// root (det J > 0) is the branch that is continuous in Y and vanishes at the
/// Clifford point for k = l.
inline IsothermalSolution solve_uv(double theta, const TorusParams& p) {
    p.validate();

    IsothermalSolution out;
    out.Y = -potential(theta, p);
    out.rho_squared = conformal_factor(theta, p.k, p.l);
    if (out.Y < -1e-12) {
        throw DomainError("solve_uv: theta outside the turning-point band (Y < 0)");
    }
    const double Y = std::max(out.Y, 0.0);

    const double s = std::sin(theta), c = std::cos(theta);
    const double k = p.k, l = p.l;
    const double rho2 = out.rho_squared;

    if (p.k == 0 || p.l == 0) {
        // The mixed equation degenerates; one of (u, v) vanishes and the
        // other follows from the corresponding diagonal equation.
        if (p.k == 0) {
            out.u = 0.0;
            out.v = (std::sqrt((s * s + l * l * Y) / rho2) - 1.0) / l;
        } else {
            out.v = 0.0;
            out.u = (std::sqrt((c * c + k * k * Y) / rho2) - 1.0) / k;
        }
        return out;
    }

    const double d = kl_weight(theta, p.k, p.l);
    const double b = k * l * (c * c - s * s) / d;  // l u - k v

    // Quadratic in w2 = l u + k v.
    const double k2l2 = k * k + l * l;
    const double qa = k2l2;
    const double qb = 2.0 * b * (k * k - l * l) + 4.0 * k * l;
    const double qc = k2l2 * b * b - 4.0 * k * k * l * l * Y / rho2;
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < -1e-12 * std::max(1.0, qb * qb)) {
        throw NoRealRootError("solve_uv: negative discriminant off the energy shell");
    }
    disc = std::max(disc, 0.0);

    const double sq = std::sqrt(disc);
    for (const double w2 : {(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)}) {
        const double u = (w2 + b) / (2.0 * l);
        const double v = (w2 - b) / (2.0 * k);
        if (1.0 + k * u + l * v > 0.0) {  // det J
            out.u = u;
            out.v = v;
            return out;
        }
    }
    throw NoRealRootError("solve_uv: no orientation-preserving root");
}

/// Max-entry deviation of g - rho^2 J^T J over n_samples chart points, with g
/// from the fundamental forms of the profile chart and (u, v) from solve_uv.
inline double verify_isothermal_metric(const TorusParams& params, const ThetaProfile& profile,
                                       int n_samples) {
    if (n_samples < 1) throw DomainError("verify_isothermal_metric: n_samples >= 1");
    const SurfaceChart chart = SurfaceChart::from_profile(profile);
    SplitMix64 rng(0x150ULL);
    double worst = 0.0;
    const double k = params.k, l = params.l;
    for (int i = 0; i < n_samples; ++i) {
        const double phi1 = rng.uniform(0.0, 2.0 * kPi);
        const double phi2 = rng.uniform(0.0, 2.0 * kPi);
        const Mat2 g = fundamental_forms(phi1, phi2, chart).g;
        const double theta = chart.theta_at(phi1, phi2).theta;
        const IsothermalSolution s = solve_uv(theta, params);
        const Mat2 J{1.0 + k * s.u, l * s.u, k * s.v, 1.0 + l * s.v};
        worst = std::max(worst, (g - J.transpose() * J * s.rho_squared).max_abs());
    }
    return worst;
}

}  // namespace s3torus
