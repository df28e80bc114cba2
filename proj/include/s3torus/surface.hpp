#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <utility>

#include "s3torus/common.hpp"
#include "s3torus/mechanics.hpp"

namespace s3torus {

/// Travelling-wave chart: a theta supplier over t together with the winding
/// pair, from which the surface partials are
///   d_a theta = (k, l)_a * theta_dot(t),  d_ab theta = (k,l)_a (k,l)_b * theta_ddot(t),
/// with t = k*phi1 + l*phi2.
class SurfaceChart {
 public:
    SurfaceChart(int k, int l, std::function<ThetaJet(double)> source)
        : k_(k), l_(l), source_(std::move(source)) {}

    static SurfaceChart from_profile(ThetaProfile profile) {
        const auto params = profile.params();
        auto shared = std::make_shared<ThetaProfile>(std::move(profile));
        return SurfaceChart(params.k, params.l,
                            [shared](double t) { return shared->eval(t); });
    }

    static SurfaceChart constant(int k, int l, double theta) {
        return SurfaceChart(k, l, [theta](double) { return ThetaJet{theta, 0.0, 0.0}; });
    }

    int k() const { return k_; }
    int l() const { return l_; }
    double t_of(double phi1, double phi2) const { return k_ * phi1 + l_ * phi2; }
    ThetaJet theta_at(double phi1, double phi2) const { return source_(t_of(phi1, phi2)); }

 private:
    int k_, l_;
    std::function<ThetaJet(double)> source_;
};

/// x = (cos(theta) cos(phi1), cos(theta) sin(phi1), sin(theta) cos(phi2), sin(theta) sin(phi2))
inline Vec4 embed_point(double phi1, double phi2, const SurfaceChart& chart) {
    const double theta = chart.theta_at(phi1, phi2).theta;
    const double s = std::sin(theta), c = std::cos(theta);
    return {{c * std::cos(phi1), c * std::sin(phi1), s * std::cos(phi2), s * std::sin(phi2)}};
}

namespace detail {

struct ChartJet {
    double s, c;            // sin(theta), cos(theta)
    double t1, t2;          // d_1 theta, d_2 theta
    double t11, t12, t22;   // second partials
    double c1, s1, c2, s2;  // cos/sin of phi1, phi2
};

inline ChartJet chart_jet(double phi1, double phi2, const SurfaceChart& chart) {
    const ThetaJet jet = chart.theta_at(phi1, phi2);
    const double k = chart.k(), l = chart.l();
    ChartJet out;
    out.s = std::sin(jet.theta);
    out.c = std::cos(jet.theta);
    out.t1 = k * jet.theta_dot;
    out.t2 = l * jet.theta_dot;
    out.t11 = k * k * jet.theta_ddot;
    out.t12 = k * l * jet.theta_ddot;
    out.t22 = l * l * jet.theta_ddot;
    out.c1 = std::cos(phi1);
    out.s1 = std::sin(phi1);
    out.c2 = std::cos(phi2);
    out.s2 = std::sin(phi2);
    return out;
}

inline Vec4 normal_unnormalized(const ChartJet& j) {
    const double sc = j.s * j.c;
    return {{-sc * j.s * j.c1 + j.s * j.s1 * j.t1,
             -sc * j.s * j.s1 - j.s * j.c1 * j.t1,
             sc * j.c * j.c2 + j.c * j.s2 * j.t2,
             sc * j.c * j.s2 - j.c * j.c2 * j.t2}};
}

// Second-fundamental-form numerators (before dividing by |m|):
//   H11 = s^2 c^2 + sc t11 + 2 s^2 t1^2
//   H12 = sc t12 + (s^2 - c^2) t1 t2
//   H22 = -s^2 c^2 + sc t22 - 2 c^2 t2^2
inline Mat2 h_numerators(const ChartJet& j) {
    const double sc = j.s * j.c;
    const double s2 = j.s * j.s, c2 = j.c * j.c;
    const double h11 = s2 * c2 + sc * j.t11 + 2.0 * s2 * j.t1 * j.t1;
    const double h12 = sc * j.t12 + (s2 - c2) * j.t1 * j.t2;
    const double h22 = -s2 * c2 + sc * j.t22 - 2.0 * c2 * j.t2 * j.t2;
    return {h11, h12, h12, h22};
}

inline Mat2 metric(const ChartJet& j) {
    return {j.c * j.c + j.t1 * j.t1, j.t1 * j.t2, j.t1 * j.t2, j.s * j.s + j.t2 * j.t2};
}

}  // namespace detail

/// The vector orthogonal to d_1 x, d_2 x and x (not normalized);
/// |m|^2 = det(g) everywhere.
inline Vec4 normal_vector(double phi1, double phi2, const SurfaceChart& chart) {
    const auto j = detail::chart_jet(phi1, phi2, chart);
    const Vec4 m = detail::normal_unnormalized(j);
    if (m.norm() < 1e-13) {
        throw DegenerateError("normal_vector: degenerate normal (theta at a pole)");
    }
    return m;
}

struct FundamentalForms {
    Mat2 g;                 // first fundamental form
    Mat2 h;                 // second fundamental form (normalized by |m|)
    Vec4 normal;            // m, unnormalized
    double normal_length;   // |m| = sqrt(det g)
};

inline FundamentalForms fundamental_forms(double phi1, double phi2, const SurfaceChart& chart) {
    const auto j = detail::chart_jet(phi1, phi2, chart);
    const Vec4 m = detail::normal_unnormalized(j);
    const double mlen = m.norm();
    if (mlen < 1e-13) {
        throw DegenerateError("fundamental_forms: degenerate normal (theta at a pole)");
    }
    return {detail::metric(j), detail::h_numerators(j) * (1.0 / mlen), m, mlen};
}

/// Mean-curvature condition in S^3 for the travelling-wave ansatz:
///   g22 H11 + g11 H22 - 2 g12 H12
/// (the cofactor contraction det(g) tr(g^{-1} h) |m|). Evaluated with the
/// exact cancellations applied: the quartic theta_1^2 theta_2^2 terms drop,
/// and t11 t2^2 + t22 t1^2 - 2 t12 t1 t2 = 0 identically for charts with
/// theta_a = (k,l)_a theta_dot, theta_ab = (k,l)_a (k,l)_b theta_ddot.
inline double minimality_residual(double phi1, double phi2, const SurfaceChart& chart) {
    const auto j = detail::chart_jet(phi1, phi2, chart);
    const double s2 = j.s * j.s, c2 = j.c * j.c;
    const double sc = j.s * j.c;
    const double q1 = j.t1 * j.t1, q2 = j.t2 * j.t2;
    return s2 * c2 * (s2 - c2) + sc * (s2 * j.t11 + c2 * j.t22) +
           2.0 * s2 * s2 * q1 - 2.0 * c2 * c2 * q2 + s2 * c2 * (q2 - q1);
}

/// Same contraction computed literally from the cofactors; kept for pinning
/// the regrouped form in tests.
inline double minimality_residual_cofactor(double phi1, double phi2, const SurfaceChart& chart) {
    const auto j = detail::chart_jet(phi1, phi2, chart);
    const Mat2 g = detail::metric(j);
    const Mat2 H = detail::h_numerators(j);
    return g.a22 * H.a11 + g.a11 * H.a22 - 2.0 * g.a12 * H.a12;
}

struct CurvatureReport {
    double mean_curvature_residual = 0;
    double gaussian_R = 0;  // scalar curvature (TrW)^2 - TrW^2 + (TrW~)^2 - TrW~^2
    double det_g = 0;
    double det_h = 0;
    double ratio_h_over_g = 0;
};

/// Shape-operator traces with W = g^{-1} h (h already normalized by |m|) and
/// W~ = -identity from x . d_ab x = -g_ab. The scalar curvature vanishes
/// identically on the k = l family.
inline CurvatureReport curvature_report(double phi1, double phi2, const SurfaceChart& chart) {
    const FundamentalForms f = fundamental_forms(phi1, phi2, chart);
    const Mat2 w = f.g.inverse() * f.h;
    const double tr_w = w.trace();
    const double tr_w2 = (w * w).trace();
    // W~ = -1: (Tr W~)^2 = 4, Tr(W~^2) = 2.
    const double r = tr_w * tr_w - tr_w2 + 4.0 - 2.0;

    CurvatureReport rep;
    rep.mean_curvature_residual = minimality_residual(phi1, phi2, chart);
    rep.gaussian_R = r;
    rep.det_g = f.g.det();
    rep.det_h = f.h.det();
    rep.ratio_h_over_g = rep.det_h / rep.det_g;
    return rep;
}

}  // namespace s3torus
