#pragma once

#include <cmath>

#include "s3torus/common.hpp"
#include "s3torus/mechanics.hpp"
#include "s3torus/quadrature.hpp"
#include "s3torus/surface.hpp"

namespace s3torus {

/// Closed-form k = l family member: deformation e = sinh(gamma), phase
/// offset phi0, winding k (= l). e = 0 is the standard Clifford torus.
struct CliffordParams {
    double e = 0.0;
    double phi0 = 0.0;
    int k = 1;

    /// E = 1/(2 cosh(gamma)) in (0, 1/2]
    double energy() const { return energy_from_deformation(e); }

    /// a = cosh(gamma) = sqrt(1 + e^2)
    double a() const { return std::sqrt(1.0 + e * e); }
};

/// alpha = 2*theta as a function of phi = phi1 + phi2, with
///   sin(alpha) = 1/sqrt(1 + e^2 sin^2(phi - phi0))
///   cos(alpha) = -e sin(phi - phi0) / sqrt(1 + e^2 sin^2(phi - phi0))
/// and derivatives d/dphi.
struct AlphaValue {
    double alpha = 0;
    double sin_alpha = 0;
    double cos_alpha = 0;
    double alpha_prime = 0;
    double alpha_double_prime = 0;
};

inline AlphaValue alpha_closed_form(double phi, const CliffordParams& p) {
    const double psi = phi - p.phi0;
    const double sp = std::sin(psi), cp = std::cos(psi);
    const double den2 = 1.0 + p.e * p.e * sp * sp;
    const double den = std::sqrt(den2);
    const double a2 = 1.0 + p.e * p.e;

    AlphaValue out;
    out.sin_alpha = 1.0 / den;
    out.cos_alpha = -p.e * sp / den;
    out.alpha = std::atan2(out.sin_alpha, out.cos_alpha);
    out.alpha_prime = p.e * cp / den2;
    out.alpha_double_prime = -p.e * sp * (a2 + p.e * p.e * cp * cp) / (den2 * den2);
    return out;
}

/// The k = l surface in closed form,
///   x = (sqrt((1-f)/2) (cos phi1, sin phi1), sqrt((1+f)/2) (cos phi2, sin phi2)),
///   f = e sin(phi - phi0)/sqrt(1 + e^2 sin^2(phi - phi0)),  phi = phi1 + phi2,
/// normalized so |x| = 1 (f = -cos alpha, so cos^2 theta = (1 - f)/2).
inline Vec4 closed_embedding(double phi1, double phi2, const CliffordParams& p) {
    const double psi = phi1 + phi2 - p.phi0;
    const double sp = std::sin(psi);
    const double f = p.e * sp / std::sqrt(1.0 + p.e * p.e * sp * sp);
    const double r1 = std::sqrt(0.5 * (1.0 - f));
    const double r2 = std::sqrt(0.5 * (1.0 + f));
    return {{r1 * std::cos(phi1), r1 * std::sin(phi1), r2 * std::cos(phi2), r2 * std::sin(phi2)}};
}

/// Travelling-wave chart backed by the closed form; theta(t) = alpha(t/k)/2.
inline SurfaceChart closed_form_chart(const CliffordParams& p) {
    if (p.k == 0) throw DomainError("closed_form_chart: winding k must be nonzero");
    const CliffordParams params = p;
    const double k = p.k;
    return SurfaceChart(p.k, p.k, [params, k](double t) {
        const AlphaValue a = alpha_closed_form(t / k, params);
        return ThetaJet{0.5 * a.alpha, 0.5 * a.alpha_prime / k,
                        0.5 * a.alpha_double_prime / (k * k)};
    });
}

/// Max |mean-curvature residual| of the closed-form surface over n_samples
/// deterministic pseudo-random points.
inline double verify_minimal_closed_form(const CliffordParams& p, int n_samples) {
    if (n_samples < 1) throw DomainError("verify_minimal_closed_form: n_samples >= 1");
    const SurfaceChart chart = closed_form_chart(p);
    SplitMix64 rng(0x5eedULL);
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double phi1 = rng.uniform(0.0, 2.0 * kPi);
        const double phi2 = rng.uniform(0.0, 2.0 * kPi);
        worst = std::max(worst, std::fabs(minimality_residual(phi1, phi2, chart)));
    }
    return worst;
}

/// Ingredients of the explicit isometry onto the square torus:
///   u = cos(alpha)/2 + w,  v = -cos(alpha)/2 + w,
/// where w is the root, with w(e = 0) = 0, of
///   2w^2 + 2w + cos^2(alpha)/2 = (alpha')^2/2,
/// i.e. in closed form w = (sqrt(1 + e^2)/(1 + e^2 sin^2(phi - phi0)) - 1)/2.
/// J is the Jacobian of the reparametrization phi~ = phi + integrals of (u, v).
struct IsometryData {
    double u = 0;
    double v = 0;
    double w = 0;
    Mat2 J;
};

inline IsometryData isometry_functions(double phi, const CliffordParams& p) {
    if (p.k != 1) throw DomainError("isometry_functions: construction requires k = l = 1");
    const AlphaValue a = alpha_closed_form(phi, p);

    const double disc = 1.0 - a.cos_alpha * a.cos_alpha + a.alpha_prime * a.alpha_prime;
    if (disc < 0.0) throw NoRealRootError("isometry_functions: negative discriminant");

    IsometryData out;
    out.w = 0.5 * (std::sqrt(disc) - 1.0);
    out.u = 0.5 * a.cos_alpha + out.w;
    out.v = -0.5 * a.cos_alpha + out.w;
    out.J = {1.0 + out.u, out.u, out.v, 1.0 + out.v};
    return out;
}

/// Max-entry deviation of 2g - J^T J over n_samples points; zero means the
/// reparametrized surface carries the square flat metric (1/2) * identity.
inline double verify_isometry(const CliffordParams& p, int n_samples) {
    if (p.k != 1) throw DomainError("verify_isometry: construction requires k = l = 1");
    const SurfaceChart chart = closed_form_chart(p);
    SplitMix64 rng(0xc0ffeeULL);
    double worst = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double phi1 = rng.uniform(0.0, 2.0 * kPi);
        const double phi2 = rng.uniform(0.0, 2.0 * kPi);
        const Mat2 g = fundamental_forms(phi1, phi2, chart).g;
        const Mat2 J = isometry_functions(phi1 + phi2, p).J;
        worst = std::max(worst, (g * 2.0 - J.transpose() * J).max_abs());
    }
    return worst;
}

struct SquareCoords {
    double phi1_tilde = 0;
    double phi2_tilde = 0;
};

/// Flat coordinates phi~1 = phi1 + int_0^phi u, phi~2 = phi2 + int_0^phi v.
/// In these coordinates the induced metric is (1/2) * identity.
inline SquareCoords reparametrize_to_square(double phi1, double phi2, const CliffordParams& p,
                                            double tol = 1e-12) {
    if (p.k != 1) throw DomainError("reparametrize_to_square: construction requires k = l = 1");
    const double phi = phi1 + phi2;
    const auto int_u = integrate_adaptive(
        [&p](double x) { return isometry_functions(x, p).u; }, 0.0, phi, tol, tol);
    const auto int_v = integrate_adaptive(
        [&p](double x) { return isometry_functions(x, p).v; }, 0.0, phi, tol, tol);
    return {phi1 + int_u.value, phi2 + int_v.value};
}

}  // namespace s3torus
