#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "s3torus/common.hpp"
#include "s3torus/rk45.hpp"

namespace s3torus {

/// One member of the travelling-wave torus family: winding pair (k, l) and
/// the mechanical energy E of the zero-energy oscillation problem
///   theta_dot^2 + V_E(theta) = 0,  theta = theta(k*phi1 + l*phi2).
struct TorusParams {
    int k = 0;
    int l = 1;
    double energy = 0.5;  // E in (0, 1/2]; E = 1/2 is the Clifford point

    void validate() const {
        if (k == 0 && l == 0) throw DomainError("TorusParams: (k, l) must not be (0, 0)");
        if (!(energy > 0.0) || energy > 0.5) {
            throw DomainError("TorusParams: energy must lie in (0, 1/2]");
        }
    }

    /// a = 1/(2E) = cosh(gamma) >= 1
    double a() const { return 1.0 / (2.0 * energy); }

    /// e = sinh(gamma) = sqrt(a^2 - 1) >= 0
    double deformation() const {
        const double aa = a();
        return std::sqrt(std::max(0.0, aa * aa - 1.0));
    }
};

/// E = 1/(2*sqrt(1+e^2))
inline double energy_from_deformation(double e) { return 0.5 / std::sqrt(1.0 + e * e); }

/// e = sqrt(1/(4E^2) - 1)
inline double deformation_from_energy(double E) {
    if (!(E > 0.0) || E > 0.5) throw DomainError("deformation_from_energy: E outside (0, 1/2]");
    return std::sqrt(std::max(0.0, 1.0 / (4.0 * E * E) - 1.0));
}

/// k^2 sin^2(theta) + l^2 cos^2(theta): the weight multiplying theta_dot^2 in
/// the kinetic term, and the conformal normalizer for general (k, l).
inline double kl_weight(double theta, int k, int l) {
    const double s = std::sin(theta), c = std::cos(theta);
    return static_cast<double>(k) * k * s * s + static_cast<double>(l) * l * c * c;
}

struct MechanicalState {
    double theta = 0;
    double theta_dot = 0;
    double pi_momentum = 0;
    double t = 0;
};

/// V_E(theta) = (c^2 s^2/(k^2 s^2 + l^2 c^2)) (1 - c^2 s^2/E^2).
/// Negative strictly between the turning points, zero at them.
inline double potential(double theta, const TorusParams& p) {
    p.validate();
    const double s = std::sin(theta), c = std::cos(theta);
    const double n = c * c * s * s;
    const double d = kl_weight(theta, p.k, p.l);
    return (n / d) * (1.0 - n / (p.energy * p.energy));
}

/// dV_E/dtheta, analytic.
inline double potential_derivative(double theta, const TorusParams& p) {
    p.validate();
    const double s = std::sin(theta), c = std::cos(theta);
    const double n = c * c * s * s;
    const double np = 2.0 * s * c * (c * c - s * s);
    const double d = kl_weight(theta, p.k, p.l);
    const double dp = 2.0 * s * c * (static_cast<double>(p.k) * p.k - static_cast<double>(p.l) * p.l);
    const double e2 = p.energy * p.energy;
    // V = n/d - n^2/(d e2)
    return (np * d - n * dp) / (d * d) - (2.0 * n * np * d - n * n * dp) / (d * d * e2);
}

/// H[theta, pi] = sin(theta)cos(theta) sqrt(1 - pi^2/(k^2 s^2 + l^2 c^2));
/// constant (= E) along trajectories.
inline double hamiltonian(double theta, double pi_momentum, const TorusParams& p) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double d = kl_weight(theta, p.k, p.l);
    double radicand = 1.0 - pi_momentum * pi_momentum / d;
    if (radicand < -1e-12) {
        throw DomainError("hamiltonian: pi_momentum^2 exceeds k^2 s^2 + l^2 c^2");
    }
    radicand = std::max(radicand, 0.0);
    return s * c * std::sqrt(radicand);
}

/// pi = -(k^2 s^2 + l^2 c^2) theta_dot / sqrt(c^2 s^2 + (k^2 s^2 + l^2 c^2) theta_dot^2)
inline double canonical_momentum(double theta, double theta_dot, const TorusParams& p) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double d = kl_weight(theta, p.k, p.l);
    const double denom2 = c * c * s * s + d * theta_dot * theta_dot;
    if (denom2 <= 0.0) {
        throw DomainError("canonical_momentum: degenerate state (theta_dot = 0 at a pole)");
    }
    return -d * theta_dot / std::sqrt(denom2);
}

/// theta_ddot as a function of (theta, theta_dot); energy-independent form of
/// the second-order equation, equal to -V_E'(theta)/2 on the energy shell.
inline double ode_rhs_second_order(double theta, double theta_dot, const TorusParams& p) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double sc = s * c;
    if (std::fabs(sc) < 1e-15) {
        throw SingularityError("ode_rhs_second_order: theta at a pole (0 or pi/2)");
    }
    const double k2 = static_cast<double>(p.k) * p.k;
    const double l2 = static_cast<double>(p.l) * p.l;
    const double d = k2 * s * s + l2 * c * c;
    const double s2 = s * s, c2 = c * c;
    const double num = theta_dot * theta_dot *
                           ((k2 - l2) * s2 * c2 - 2.0 * k2 * s2 * s2 + 2.0 * l2 * c2 * c2) +
                       s2 * c2 * (c2 - s2);
    return num / (sc * d);
}

inline double ode_rhs_second_order(const MechanicalState& st, const TorusParams& p) {
    return ode_rhs_second_order(st.theta, st.theta_dot, p);
}

struct HamiltonRhs {
    double dtheta_dt = 0;
    double dpi_dt = 0;
};

/// Canonical equations (dH/dpi, -dH/dtheta), both analytic.
inline HamiltonRhs hamilton_rhs(double theta, double pi_momentum, const TorusParams& p) {
    const double s = std::sin(theta), c = std::cos(theta);
    const double d = kl_weight(theta, p.k, p.l);
    const double dp = 2.0 * s * c * (static_cast<double>(p.k) * p.k - static_cast<double>(p.l) * p.l);
    const double radicand = 1.0 - pi_momentum * pi_momentum / d;
    if (radicand <= 0.0) {
        throw DomainError("hamilton_rhs: Hamiltonian radicand not positive");
    }
    const double root = std::sqrt(radicand);
    const double dH_dpi = -s * c * pi_momentum / (d * root);
    const double dH_dtheta = (c * c - s * s) * root +
                             s * c * pi_momentum * pi_momentum * dp / (2.0 * d * d * root);
    return {dH_dpi, -dH_dtheta};
}

inline HamiltonRhs hamilton_rhs(const MechanicalState& st, const TorusParams& p) {
    return hamilton_rhs(st.theta, st.pi_momentum, p);
}

struct TurningPoints {
    double theta_minus = 0;
    double theta_plus = 0;
};

/// Solutions of c^2 s^2 = E^2: sin^2(theta_pm) = 1/2 pm sqrt(1/4 - E^2).
/// theta_minus + theta_plus = pi/2.
inline TurningPoints turning_points(const TorusParams& p) {
    if (!(p.energy > 0.0) || p.energy > 0.5) {
        throw DomainError("turning_points: energy outside (0, 1/2]");
    }
    const double root = std::sqrt(std::max(0.0, 0.25 - p.energy * p.energy));
    const double v_plus = 0.5 + root;
    const double v_minus = 0.5 - root;
    return {std::asin(std::sqrt(v_minus)), std::asin(std::sqrt(v_plus))};
}

/// Value and first two t-derivatives of a theta supplier.
struct ThetaJet {
    double theta = 0;
    double theta_dot = 0;
    double theta_ddot = 0;
};

/// Dense, immutable trajectory theta(t) started at the upper turning point
/// with theta_dot = 0. Node data (theta, theta_dot, theta_ddot) at every
/// accepted integrator step; cubic Hermite evaluation in between. theta(t) is
/// even in t and periodic with period 2*half_period, which eval() uses to
/// extend beyond the integrated span.
class ThetaProfile {
 public:
    struct Node {
        double t, theta, theta_dot, theta_ddot;
    };

    ThetaProfile(TorusParams params, std::vector<Node> nodes, double half_period,
                 double max_energy_residual, bool constant)
        : params_(params),
          nodes_(std::move(nodes)),
          half_period_(half_period),
          max_energy_residual_(max_energy_residual),
          constant_(constant) {}

    const TorusParams& params() const { return params_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    double span() const { return nodes_.back().t; }
    bool constant() const { return constant_; }

    /// Duration of the theta_plus -> theta_minus traverse. For the degenerate
    /// Clifford profile this is the small-oscillation limit pi*sqrt((k^2+l^2)/2).
    double half_period() const { return half_period_; }
    double period() const { return 2.0 * half_period_; }

    double max_energy_residual() const { return max_energy_residual_; }

    ThetaJet eval(double t) const {
        if (constant_) return {kPi / 4.0, 0.0, 0.0};
        double sign = 1.0;
        if (t < 0.0) {  // even about the t = 0 turning point
            t = -t;
            sign = -sign;
        }
        if (t > span()) {
            if (!(half_period_ > 0.0) || std::isnan(half_period_)) {
                throw DomainError("ThetaProfile::eval: t beyond span and period unknown");
            }
            t = std::fmod(t, period());
            if (t > span()) {  // even about the theta_minus turning point
                t = period() - t;
                sign = -sign;
                if (t > span()) {
                    throw DomainError("ThetaProfile::eval: span shorter than half-period");
                }
            }
        }
        ThetaJet jet = eval_in_span(t);
        jet.theta_dot *= sign;
        return jet;
    }

 private:
    ThetaJet eval_in_span(double t) const {
        const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                                         [](double v, const Node& n) { return v < n.t; });
        std::size_t hi = static_cast<std::size_t>(it - nodes_.begin());
        if (hi == 0) hi = 1;
        if (hi >= nodes_.size()) hi = nodes_.size() - 1;
        const Node& n0 = nodes_[hi - 1];
        const Node& n1 = nodes_[hi];

        const double h = n1.t - n0.t;
        const double u = (t - n0.t) / h;
        const double u2 = u * u, u3 = u2 * u;
        const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
        const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;

        const double theta = h00 * n0.theta + h * h10 * n0.theta_dot + h01 * n1.theta +
                             h * h11 * n1.theta_dot;
        const double theta_dot = h00 * n0.theta_dot + h * h10 * n0.theta_ddot +
                                 h01 * n1.theta_dot + h * h11 * n1.theta_ddot;
        // theta_ddot is the derivative of the theta_dot interpolant, not a
        // fresh right-hand-side evaluation.
        const double d00 = 6 * u2 - 6 * u, d10 = 3 * u2 - 4 * u + 1;
        const double d01 = -6 * u2 + 6 * u, d11 = 3 * u2 - 2 * u;
        const double theta_ddot = (d00 * n0.theta_dot + h * d10 * n0.theta_ddot +
                                   d01 * n1.theta_dot + h * d11 * n1.theta_ddot) /
                                  h;
        return {theta, theta_dot, theta_ddot};
    }

    TorusParams params_;
    std::vector<Node> nodes_;
    double half_period_;
    double max_energy_residual_;
    bool constant_;
};

/// Integrates theta(t) over [0, t_span] from theta(0) = theta_plus,
/// theta_dot(0) = 0 with the adaptive Dormand-Prince pair. Records the
/// half-period (first return of theta_dot to zero, at theta_minus) and the
/// max energy-shell residual over the nodes. E = 1/2 yields the exact
/// constant profile theta = pi/4.
inline ThetaProfile integrate_theta(const TorusParams& params, double t_span,
                                    double tol = 1e-10, double h_max = 2e-3) {
    params.validate();
    if (!(t_span > 0.0)) throw DomainError("integrate_theta: t_span must be positive");
    if (!(tol > 0.0) || !(h_max > 0.0)) {
        throw DomainError("integrate_theta: tol and h_max must be positive");
    }

    const double k2l2 = static_cast<double>(params.k) * params.k +
                        static_cast<double>(params.l) * params.l;
    if (params.energy == 0.5) {
        // Degenerate well: theta = pi/4 exactly; half-period from the
        // small-oscillation limit.
        std::vector<ThetaProfile::Node> nodes{{0.0, kPi / 4.0, 0.0, 0.0},
                                              {t_span, kPi / 4.0, 0.0, 0.0}};
        return ThetaProfile(params, std::move(nodes), kPi * std::sqrt(k2l2 / 2.0), 0.0, true);
    }

    const TurningPoints tp = turning_points(params);

    Rk45Options opt;
    opt.rtol = tol;
    opt.atol = tol * 1e-2;
    opt.h_max = h_max;

    std::vector<ThetaProfile::Node> nodes;
    nodes.reserve(static_cast<std::size_t>(t_span / opt.h_max) + 64);

    auto rhs = [&params](double /*t*/, const std::array<double, 2>& y,
                         std::array<double, 2>& dy) {
        dy[0] = y[1];
        dy[1] = ode_rhs_second_order(y[0], y[1], params);
    };
    integrate_rk45<2>(rhs, {tp.theta_plus, 0.0}, 0.0, t_span, opt,
                      [&nodes](double t, const std::array<double, 2>& y,
                               const std::array<double, 2>& dy) {
                          nodes.push_back({t, y[0], y[1], dy[1]});
                      });

    // Half-period: first sign change of theta_dot (negative branch first).
    double half_period = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (nodes[i - 1].theta_dot < 0.0 && nodes[i].theta_dot >= 0.0) {
            // Bisect the Hermite interpolant of theta_dot inside the step.
            const auto& n0 = nodes[i - 1];
            const auto& n1 = nodes[i];
            const double h = n1.t - n0.t;
            auto td = [&](double u) {
                const double u2 = u * u, u3 = u2 * u;
                return (2 * u3 - 3 * u2 + 1) * n0.theta_dot + h * (u3 - 2 * u2 + u) * n0.theta_ddot +
                       (-2 * u3 + 3 * u2) * n1.theta_dot + h * (u3 - u2) * n1.theta_ddot;
            };
            double lo = 0.0, hi = 1.0;
            for (int iter = 0; iter < 80; ++iter) {
                const double mid = 0.5 * (lo + hi);
                (td(mid) < 0.0 ? lo : hi) = mid;
            }
            half_period = n0.t + 0.5 * (lo + hi) * h;
            break;
        }
    }

    double max_res = 0.0, max_scaled = 0.0;
    for (const auto& n : nodes) {
        const double kinetic = n.theta_dot * n.theta_dot;
        const double res = std::fabs(kinetic + potential(n.theta, params));
        max_res = std::max(max_res, res);
        max_scaled = std::max(max_scaled, res / std::max(1.0, kinetic));
    }
    // Audit relative to the kinetic scale; deep wells reach theta_dot^2 >> 1.
    if (max_scaled > std::max(100.0 * tol, 1e-7)) {
        throw ToleranceError("integrate_theta: energy residual exceeds tolerance");
    }
    return ThetaProfile(params, std::move(nodes), half_period, max_res, false);
}

}  // namespace s3torus
