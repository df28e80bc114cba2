#pragma once

#include <algorithm>
#include <cmath>

#include "s3torus/common.hpp"

namespace s3torus {

/// Carlson symmetric elliptic integrals via the duplication theorem.
/// The truncation error of the final Taylor expansion is O(errtol^6) for R_C
/// and R_F and O(errtol^7.5) for R_J, so the tolerances below reach full
/// double precision.

/// R_C(x, y) = (1/2) int_0^inf dt / ((t+y) sqrt(t+x)),  x >= 0, y > 0.
inline double carlson_rc(double x, double y) {
    if (x < 0.0 || y <= 0.0) throw DomainError("carlson_rc: requires x >= 0, y > 0");
    constexpr double errtol = 0.0012;
    double xt = x, yt = y, ave = 0.0, s = 0.0;
    for (;;) {
        const double lam = 2.0 * std::sqrt(xt) * std::sqrt(yt) + yt;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        ave = (xt + 2.0 * yt) / 3.0;
        s = (yt - ave) / ave;
        if (std::fabs(s) <= errtol) break;
    }
    return (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) / std::sqrt(ave);
}

/// R_F(x, y, z) = (1/2) int_0^inf dt / sqrt((t+x)(t+y)(t+z)),
/// x, y, z >= 0 with at most one of them zero.
inline double carlson_rf(double x, double y, double z) {
    if (x < 0.0 || y < 0.0 || z < 0.0 || (x + y <= 0.0) || (y + z <= 0.0) || (x + z <= 0.0)) {
        throw DomainError("carlson_rf: arguments outside domain");
    }
    constexpr double errtol = 0.0025;
    double xt = x, yt = y, zt = z, ave = 0.0, dx = 0.0, dy = 0.0, dz = 0.0;
    for (;;) {
        const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        const double lam = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        ave = (xt + yt + zt) / 3.0;
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        if (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)}) <= errtol) break;
    }
    const double e2 = dx * dy - dz * dz;
    const double e3 = dx * dy * dz;
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(ave);
}

/// R_J(x, y, z, p) = (3/2) int_0^inf dt / ((t+p) sqrt((t+x)(t+y)(t+z))),
/// x, y, z >= 0 (at most one zero), p > 0.
inline double carlson_rj(double x, double y, double z, double p) {
    if (x < 0.0 || y < 0.0 || z < 0.0 || p <= 0.0 || (x + y <= 0.0) || (y + z <= 0.0) ||
        (x + z <= 0.0)) {
        throw DomainError("carlson_rj: arguments outside domain");
    }
    constexpr double errtol = 0.0015;
    constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 3.0, c3 = 3.0 / 22.0, c4 = 3.0 / 26.0;
    constexpr double c5 = 0.75 * c3, c6 = 1.5 * c4, c7 = 0.5 * c2, c8 = c3 + c3;

    double xt = x, yt = y, zt = z, pt = p;
    double sum = 0.0, fac = 1.0;
    double ave = 0.0, dx = 0.0, dy = 0.0, dz = 0.0, dp = 0.0;
    for (;;) {
        const double sx = std::sqrt(xt), sy = std::sqrt(yt), sz = std::sqrt(zt);
        const double lam = sx * (sy + sz) + sy * sz;
        const double alpha_root = pt * (sx + sy + sz) + sx * sy * sz;
        const double alpha = alpha_root * alpha_root;
        const double beta = pt * (pt + lam) * (pt + lam);
        sum += fac * carlson_rc(alpha, beta);
        fac *= 0.25;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        pt = 0.25 * (pt + lam);
        ave = 0.2 * (xt + yt + zt + 2.0 * pt);
        dx = (ave - xt) / ave;
        dy = (ave - yt) / ave;
        dz = (ave - zt) / ave;
        dp = (ave - pt) / ave;
        if (std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz), std::fabs(dp)}) <= errtol) break;
    }
    const double ea = dx * (dy + dz) + dy * dz;
    const double eb = dx * dy * dz;
    const double ec = dp * dp;
    const double ed = ea - 3.0 * ec;
    const double ee = eb + 2.0 * dp * (ea - ec);
    return 3.0 * sum +
           fac *
               (1.0 + ed * (-c1 + c5 * ed - c6 * ee) + eb * (c7 + dp * (-c8 + dp * c4)) +
                dp * ea * (c2 - dp * c3) - c2 * dp * ec) /
               (ave * std::sqrt(ave));
}

/// Legendre incomplete elliptic integral of the third kind,
///   Pi(amplitude; n, m) = int_0^amplitude dth / ((1 - n sin^2 th) sqrt(1 - m sin^2 th)),
/// with characteristic n (n sin^2 amplitude < 1, any sign) and parameter m
/// (m sin^2 amplitude < 1). Reduced to R_F and R_J.
inline double elliptic_pi_incomplete(double amplitude, double characteristic, double parameter_m) {
    if (!(amplitude >= 0.0) || amplitude > kPi / 2.0 + 1e-12) {
        throw DomainError("elliptic_pi_incomplete: amplitude must lie in [0, pi/2]");
    }
    const double s = std::sin(amplitude);
    const double s2 = s * s;
    if (parameter_m * s2 >= 1.0) {
        throw DomainError("elliptic_pi_incomplete: m sin^2(amplitude) >= 1");
    }
    if (characteristic * s2 >= 1.0) {
        throw DomainError("elliptic_pi_incomplete: characteristic pole inside the range");
    }
    const double c2 = std::max(0.0, 1.0 - s2);
    const double q = 1.0 - parameter_m * s2;
    double result = s * carlson_rf(c2, q, 1.0);
    if (characteristic != 0.0) {
        result += (characteristic / 3.0) * s * s2 *
                  carlson_rj(c2, q, 1.0, 1.0 - characteristic * s2);
    }
    return result;
}

}  // namespace s3torus
