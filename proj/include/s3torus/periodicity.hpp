#pragma once

#include <cmath>
#include <cstdlib>

#include "s3torus/common.hpp"
#include "s3torus/elliptic.hpp"
#include "s3torus/mechanics.hpp"
#include "s3torus/quadrature.hpp"
#include "s3torus/surface.hpp"

namespace s3torus {

enum class PeriodMethod { quadrature, elliptic };

struct PeriodResult {
    double delta_phi2 = 0;   // evolution-parameter advance per full theta-oscillation
    double ratio_to_pi = 0;  // delta_phi2 / pi
    double e = 0;
    double energy = 0;
    PeriodMethod method = PeriodMethod::quadrature;
    bool rational = false;   // ratio_to_pi matches p/q with small q
    long p = 0, q = 0;
};

/// Integrand of the reparametrized period: d(phi)/d(phi~) along the solution
/// written in conformal time,
///   sqrt((k^2+l^2)/2) sqrt(1 + ((k^2-l^2)/(k^2+l^2)) e sin(phi~)/sqrt(1+e^2 sin^2 phi~)).
inline double dphi_dtilde(double phi_tilde, const TorusParams& params, double e) {
    if (params.k == 0 && params.l == 0) throw DomainError("dphi_dtilde: (k, l) = (0, 0)");
    const double k2 = static_cast<double>(params.k) * params.k;
    const double l2 = static_cast<double>(params.l) * params.l;
    const double sum = k2 + l2;
    const double sp = std::sin(phi_tilde);
    const double f = e * sp / std::sqrt(1.0 + e * e * sp * sp);
    return std::sqrt(sum / 2.0) * std::sqrt(1.0 + ((k2 - l2) / sum) * f);
}

namespace detail {

/// Best rational approximation p/q (q <= q_max) of ratio by continued
/// fractions; accepted when |ratio - p/q| <= tol.
inline void classify_ratio(PeriodResult& r, long q_max = 64, double tol = 1e-9) {
    double x = r.ratio_to_pi;
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int i = 0; i < 40; ++i) {
        const double fl = std::floor(x);
        const long a = static_cast<long>(fl);
        const long p2 = a * p1 + p0;
        const long q2 = a * q1 + q0;
        if (q2 > q_max || q2 <= 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (q1 >= 1 && std::fabs(r.ratio_to_pi - static_cast<double>(p1) / q1) <= tol) {
        r.rational = true;
        r.p = p1;
        r.q = q1;
    }
}

}  // namespace detail

/// Advance of the evolution parameter per full theta-oscillation, by adaptive
/// quadrature of dphi_dtilde over one 2*pi period of conformal time. For
/// k = 0, l = 1 this is the azimuthal angle delta-phi2 between successive
/// profile maxima; endpoints are sqrt(2)*pi at e = 0 and pi as e -> infinity.
inline PeriodResult period_quadrature(const TorusParams& params, double e, double tol = 1e-12) {
    if (!(tol > 0.0)) throw DomainError("period_quadrature: tol must be positive");
    const auto q = integrate_adaptive(
        [&params, e](double u) { return dphi_dtilde(u, params, e); }, 0.0, 2.0 * kPi, tol, tol);
    PeriodResult r;
    r.delta_phi2 = q.value;
    r.ratio_to_pi = q.value / kPi;
    r.e = e;
    r.energy = energy_from_deformation(e);
    r.method = PeriodMethod::quadrature;
    detail::classify_ratio(r);
    return r;
}

/// Turning data for the k = 0, l = 1 period in Legendre form.
struct EllipticArgs {
    double v_plus = 0, v_minus = 0;   // sin^2 of the turning angles
    double amplitude = 0;             // pi/2 for the full sweep
    double characteristic = 0;        // 1 - v_plus/v_minus (circular case, < 0)
    double modulus = 0;               // sqrt(1 - v_minus/v_plus) in (0, 1)
};

inline EllipticArgs elliptic_args(double E) {
    if (!(E > 0.0) || !(E < 0.5)) throw DomainError("elliptic_args: E outside (0, 1/2)");
    const double root = std::sqrt(0.25 - E * E);
    EllipticArgs a;
    a.v_plus = 0.5 + root;
    a.v_minus = 0.5 - root;
    a.amplitude = kPi / 2.0;
    a.characteristic = 1.0 - a.v_plus / a.v_minus;
    a.modulus = std::sqrt(1.0 - a.v_minus / a.v_plus);
    return a;
}

/// Closed form of the k = 0, l = 1 period as an elliptic integral of the
/// third kind. Substituting cos^2(theta) = v_plus - (v_plus - v_minus) sin^2(vartheta)
/// into delta-phi2 = E int dv / (v sqrt((1-v)(v_plus - v)(v - v_minus))) gives
///   delta_phi2 = (2/sqrt(v_minus)) Pi(pi/2; 1 - v_plus/v_minus, 1 - v_minus/v_plus),
/// one complete Pi per half-oscillation. Degenerates at E = 1/2 where the
/// quadrature endpoint value sqrt(2)*pi applies instead.
inline PeriodResult period_elliptic(double E) {
    if (E == 0.5) throw DomainError("period_elliptic: degenerate at E = 1/2; value is sqrt(2)*pi");
    const EllipticArgs a = elliptic_args(E);
    const double half_sweep =
        elliptic_pi_incomplete(a.amplitude, a.characteristic, a.modulus * a.modulus) /
        std::sqrt(a.v_minus);
    PeriodResult r;
    r.delta_phi2 = 2.0 * half_sweep;
    r.ratio_to_pi = r.delta_phi2 / kPi;
    r.e = deformation_from_energy(E);
    r.energy = E;
    r.method = PeriodMethod::elliptic;
    detail::classify_ratio(r);
    return r;
}

/// Finds e* >= 0 with period(e*) = target by coarse bracketing over a
/// log-spaced grid followed by bisection; monotonicity of the period in e is
/// verified by the bracketing, not assumed.
inline double search_period_target(const TorusParams& params, double target, double tol = 1e-10) {
    if (!(tol > 0.0)) throw DomainError("search_period_target: tol must be positive");
    const double qtol = std::min(tol * 1e-2, 1e-12);
    auto period_at = [&](double e) { return period_quadrature(params, e, qtol).delta_phi2; };

    double e_lo = 0.0, f_lo = period_at(0.0) - target;
    if (std::fabs(f_lo) <= tol) return 0.0;

    double e_hi = 0.0, f_hi = f_lo;
    bool bracketed = false;
    for (double e = 1.0 / 64.0; e <= 1e9; e *= 2.0) {
        e_hi = e;
        f_hi = period_at(e) - target;
        if (std::fabs(f_hi) <= tol) return e;
        if (f_lo * f_hi < 0.0) {
            bracketed = true;
            break;
        }
        e_lo = e_hi;
        f_lo = f_hi;
    }
    if (!bracketed) {
        throw NoSolutionError("search_period_target: target outside the attained period range");
    }

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (e_lo + e_hi);
        const double f_mid = period_at(mid) - target;
        if (std::fabs(f_mid) <= tol) return mid;
        if (f_lo * f_mid <= 0.0) {
            e_hi = mid;
            f_hi = f_mid;
        } else {
            e_lo = mid;
            f_lo = f_mid;
        }
        if (e_hi - e_lo < 1e-15 * std::max(1.0, e_hi)) break;
    }
    throw ToleranceError("search_period_target: bisection stalled before tolerance met");
}

/// e* such that the period equals (p/q)*pi, within tol.
inline double search_rational_period(const TorusParams& params, int p, int q, double tol = 1e-10) {
    if (p <= 0 || q <= 0) throw DomainError("search_rational_period: p, q must be positive");
    return search_period_target(params, (static_cast<double>(p) / q) * kPi, tol);
}

struct ClosureResult {
    bool closed = false;
    double max_mismatch = 0;
};

namespace detail {

// Extended gcd: returns g = gcd(a, b) and (x, y) with a*x + b*y = g.
inline long ext_gcd(long a, long b, long& x, long& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return std::labs(a);
    }
    long x1 = 0, y1 = 0;
    const long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

}  // namespace detail

/// End-to-end closure test: integrates the profile over the span needed for
/// the oscillation count implied by (p, q) (q oscillations for even p, 2q for
/// odd p), realizes the parameter advance by whole-turn shifts of (phi1, phi2),
/// and reports the worst embedding mismatch over sample points. Closes iff the
/// period is the rational multiple (p/q)*pi of pi.
inline ClosureResult closure_check(const TorusParams& params, double e, int p, int q,
                                   int n_samples = 64) {
    if (n_samples < 1) throw DomainError("closure_check: n_samples >= 1");
    const TorusParams eff{params.k, params.l, energy_from_deformation(e)};
    eff.validate();

    if (e == 0.0) {
        // Constant profile: the torus closes after one 2*pi turn in each angle.
        const SurfaceChart chart = SurfaceChart::constant(eff.k, eff.l, kPi / 4.0);
        double worst = 0.0;
        SplitMix64 rng(0x10c0ULL);
        for (int i = 0; i < n_samples; ++i) {
            const double phi1 = rng.uniform(0.0, 2.0 * kPi);
            const double phi2 = rng.uniform(0.0, 2.0 * kPi);
            const Vec4 d1 = embed_point(phi1 + 2.0 * kPi, phi2, chart) - embed_point(phi1, phi2, chart);
            const Vec4 d2 = embed_point(phi1, phi2 + 2.0 * kPi, chart) - embed_point(phi1, phi2, chart);
            worst = std::max(worst, std::max(d1.norm(), d2.norm()));
        }
        return {worst <= 1e-8, worst};
    }

    const double delta = period_quadrature(eff, e, 1e-13).delta_phi2;
    const int n_osc = (p % 2 == 0) ? q : 2 * q;
    const double t_shift = n_osc * delta;

    // The shift must be realizable by whole turns: k*(2*pi*A) + l*(2*pi*B)
    // ranges over multiples of 2*pi*gcd(k, l).
    long bez_a = 0, bez_b = 0;
    const long g = detail::ext_gcd(eff.k, eff.l, bez_a, bez_b);
    const double turn = 2.0 * kPi * static_cast<double>(g);
    const double m = std::round(t_shift / turn);
    const double d_phi1 = 2.0 * kPi * m * static_cast<double>(bez_a);
    const double d_phi2 = 2.0 * kPi * m * static_cast<double>(bez_b);

    // Sample base points with t in [0, 2*pi]; the shifted evaluation needs
    // span up to |t| ~ 2*pi*(|k|+|l|) + |shift|.
    const double span = 2.0 * kPi * (std::abs(eff.k) + std::abs(eff.l)) +
                        std::fabs(t_shift) + std::fabs(m) * turn + 4.0 * delta;
    const SurfaceChart chart = SurfaceChart::from_profile(integrate_theta(eff, span, 1e-11));

    double worst = 0.0;
    SplitMix64 rng(0xc105eULL);
    for (int i = 0; i < n_samples; ++i) {
        const double phi1 = rng.uniform(0.0, 2.0 * kPi);
        const double phi2 = rng.uniform(0.0, 2.0 * kPi);
        const Vec4 d = embed_point(phi1 + d_phi1, phi2 + d_phi2, chart) -
                       embed_point(phi1, phi2, chart);
        worst = std::max(worst, d.norm());
    }
    return {worst <= 1e-8, worst};
}

}  // namespace s3torus
