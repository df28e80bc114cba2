#include <doctest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "s3torus/mechanics.hpp"
#include "s3torus/rk45.hpp"

using namespace s3torus;

TEST_SUITE_BEGIN("mechanics");

TEST_CASE("potential: closed-form values and sign structure") {
    CHECK(std::fabs(potential(kPi / 4, {1, 1, 0.5})) < 1e-15);
    CHECK(potential(kPi / 4, {1, 1, 0.4}) == doctest::Approx(-0.140625).epsilon(1e-14));
    CHECK(std::fabs(potential(0.0, {0, 1, 0.3})) < 1e-30);

    SplitMix64 rng(1);
    for (int i = 0; i < 50; ++i) {
        const TorusParams p{0, 1, rng.uniform(0.05, 0.49)};
        const auto tp = turning_points(p);
        const double inside = rng.uniform(tp.theta_minus + 1e-3, tp.theta_plus - 1e-3);
        CHECK(potential(inside, p) < 0.0);
        CHECK(std::fabs(potential(tp.theta_minus, p)) < 1e-12);
        CHECK(std::fabs(potential(tp.theta_plus, p)) < 1e-12);
    }
}

TEST_CASE("hamiltonian: values and domain") {
    CHECK(hamiltonian(kPi / 4, 0.0, {1, 1, 0.5}) == doctest::Approx(0.5).epsilon(1e-15));
    // radicand vanishing: pi^2 = k^2 s^2 + l^2 c^2
    const TorusParams p{2, 3, 0.3};
    const double pi_max = std::sqrt(kl_weight(0.7, p.k, p.l));
    CHECK(std::fabs(hamiltonian(0.7, pi_max, p)) < 1e-7);
    CHECK(hamiltonian(kPi / 6, 0.0, {0, 1, 0.3}) ==
          doctest::Approx(std::sqrt(3.0) / 4.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)hamiltonian(0.7, 1.1 * pi_max, p), DomainError);
}

TEST_CASE("canonical momentum: values, degeneracy, round trip") {
    CHECK(canonical_momentum(1.1, 0.0, {1, 1, 0.4}) == 0.0);
    CHECK(canonical_momentum(kPi / 4, 1.0, {1, 1, 0.4}) ==
          doctest::Approx(-2.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK_THROWS_AS((void)canonical_momentum(0.0, 0.0, TorusParams{1, 1, 0.4}), DomainError);

    // H(theta, pi(theta, theta_dot)) equals c^2 s^2 / sqrt(c^2 s^2 + D theta_dot^2).
    SplitMix64 rng(2);
    for (int i = 0; i < 100; ++i) {
        const TorusParams p{3, 1, 0.3};
        const double theta = rng.uniform(0.2, kPi / 2 - 0.2);
        const double theta_dot = rng.uniform(-2.0, 2.0);
        const double s = std::sin(theta), c = std::cos(theta);
        const double n = c * c * s * s;
        const double expected = n / std::sqrt(n + kl_weight(theta, p.k, p.l) * theta_dot * theta_dot);
        const double h = hamiltonian(theta, canonical_momentum(theta, theta_dot, p), p);
        CHECK(std::fabs(h - expected) < 1e-13);
    }
}

TEST_CASE("second-order equation: equilibrium, turning push-back, shell derivative") {
    CHECK(std::fabs(ode_rhs_second_order(kPi / 4, 0.0, {1, 1, 0.5})) < 1e-15);

    // At the upper turning point theta_ddot = -V'(theta+)/2 < 0.
    const TorusParams p{0, 1, 0.4};
    const auto tp = turning_points(p);
    const double fd = (potential(tp.theta_plus + 1e-6, p) - potential(tp.theta_plus - 1e-6, p)) /
                      2e-6;
    const double acc = ode_rhs_second_order(tp.theta_plus, 0.0, p);
    CHECK(acc < 0.0);
    CHECK(std::fabs(acc + 0.5 * fd) < 1e-8);

    // Along the shell the acceleration is -V'_E/2 for the energy matching the state.
    SplitMix64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const double theta = rng.uniform(0.3, kPi / 2 - 0.3);
        const double theta_dot = rng.uniform(-1.0, 1.0);
        const TorusParams kl{2, 1, 0.5};
        const double s = std::sin(theta), c = std::cos(theta);
        const double n = c * c * s * s;
        const double energy =
            n / std::sqrt(n + kl_weight(theta, kl.k, kl.l) * theta_dot * theta_dot);
        if (energy <= 0.0 || energy > 0.5) continue;
        const TorusParams shell{kl.k, kl.l, energy};
        const double vp = potential_derivative(theta, shell);
        CHECK(std::fabs(ode_rhs_second_order(theta, theta_dot, shell) + 0.5 * vp) <
              1e-10 * std::max(1.0, std::fabs(vp)));
    }

    CHECK_THROWS_AS((void)ode_rhs_second_order(0.0, 0.1, TorusParams{1, 1, 0.4}),
                    SingularityError);
    CHECK_THROWS_AS((void)ode_rhs_second_order(kPi / 2, 0.1, TorusParams{1, 1, 0.4}),
                    SingularityError);
}

TEST_CASE("canonical equations: fixed point, momentum round trip, gradients") {
    const auto fixed = hamilton_rhs(kPi / 4, 0.0, {1, 1, 0.5});
    CHECK(std::fabs(fixed.dtheta_dt) < 1e-15);
    CHECK(std::fabs(fixed.dpi_dt) < 1e-15);

    SplitMix64 rng(4);
    const TorusParams p{2, 1, 0.3};
    for (int i = 0; i < 100; ++i) {
        const double theta = rng.uniform(0.3, kPi / 2 - 0.3);
        const double theta_dot = rng.uniform(-1.5, 1.5);
        const double pi_m = canonical_momentum(theta, theta_dot, p);
        CHECK(std::fabs(hamilton_rhs(theta, pi_m, p).dtheta_dt - theta_dot) < 1e-10);
    }

    // Analytic gradients against central differences of H.
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double theta = rng.uniform(0.3, kPi / 2 - 0.3);
        const double pi_m = rng.uniform(-0.9, 0.9) * std::sqrt(kl_weight(theta, p.k, p.l));
        const auto rhs = hamilton_rhs(theta, pi_m, p);
        const double h = 1e-6;
        const double fd_theta =
            (hamiltonian(theta + h, pi_m, p) - hamiltonian(theta - h, pi_m, p)) / (2 * h);
        const double fd_pi =
            (hamiltonian(theta, pi_m + h, p) - hamiltonian(theta, pi_m - h, p)) / (2 * h);
        worst = std::max(worst, std::fabs(rhs.dtheta_dt - fd_pi) / std::max(1.0, std::fabs(fd_pi)));
        worst = std::max(worst, std::fabs(rhs.dpi_dt + fd_theta) / std::max(1.0, std::fabs(fd_theta)));
    }
    CHECK(worst < 1e-6);

    CHECK_THROWS_AS((void)hamilton_rhs(0.7, 10.0, p), DomainError);
}

TEST_CASE("hamiltonian flow reproduces the second-order flow") {
    const TorusParams p{0, 1, 0.4};
    const auto tp = turning_points(p);
    const double theta0 = 0.5 * (tp.theta_minus + tp.theta_plus);
    const double theta_dot0 = -std::sqrt(-potential(theta0, p));
    const double pi0 = canonical_momentum(theta0, theta_dot0, p);

    Rk45Options opt;
    opt.rtol = 1e-11;
    opt.atol = 1e-13;

    std::array<double, 2> second{theta0, theta_dot0};
    integrate_rk45<2>(
        [&p](double, const std::array<double, 2>& y, std::array<double, 2>& dy) {
            dy[0] = y[1];
            dy[1] = ode_rhs_second_order(y[0], y[1], p);
        },
        second, 0.0, 2.0, opt, [&second](double, const std::array<double, 2>& y,
                                         const std::array<double, 2>&) { second = y; });

    std::array<double, 2> canonical{theta0, pi0};
    integrate_rk45<2>(
        [&p](double, const std::array<double, 2>& y, std::array<double, 2>& dy) {
            const auto rhs = hamilton_rhs(y[0], y[1], p);
            dy[0] = rhs.dtheta_dt;
            dy[1] = rhs.dpi_dt;
        },
        canonical, 0.0, 2.0, opt, [&canonical](double, const std::array<double, 2>& y,
                                               const std::array<double, 2>&) { canonical = y; });

    CHECK(std::fabs(second[0] - canonical[0]) < 1e-8);
    const double pi_end = canonical_momentum(second[0], second[1], p);
    CHECK(std::fabs(pi_end - canonical[1]) < 1e-8);
}

TEST_CASE("turning points: degenerate well, explicit roots, complementarity") {
    const auto deg = turning_points({0, 1, 0.5});
    CHECK(deg.theta_minus == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(deg.theta_plus == doctest::Approx(kPi / 4).epsilon(1e-15));

    const auto tp = turning_points({0, 1, 0.4});
    CHECK(tp.theta_plus == doctest::Approx(std::asin(std::sqrt(0.8))).epsilon(1e-15));
    CHECK(tp.theta_minus == doctest::Approx(std::asin(std::sqrt(0.2))).epsilon(1e-15));

    SplitMix64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const TorusParams p{1, 2, rng.uniform(0.01, 0.5)};
        const auto t = turning_points(p);
        CHECK(std::fabs(potential(t.theta_minus, p)) < 1e-12);
        CHECK(std::fabs(potential(t.theta_plus, p)) < 1e-12);
        CHECK(std::fabs(t.theta_minus + t.theta_plus - kPi / 2) < 1e-14);
        CHECK(t.theta_minus < t.theta_plus);
    }

    CHECK_THROWS_AS((void)turning_points(TorusParams{0, 1, 0.7}), DomainError);
    CHECK_THROWS_AS((void)turning_points(TorusParams{0, 1, -0.1}), DomainError);
}

TEST_CASE("integrate_theta: degenerate constant profile") {
    const auto profile = integrate_theta({0, 1, 0.5}, 10.0);
    CHECK(profile.constant());
    for (double t : {0.0, 1.7, 9.9, 25.0, -3.0}) {
        const auto jet = profile.eval(t);
        CHECK(jet.theta == doctest::Approx(kPi / 4).epsilon(1e-15));
        CHECK(jet.theta_dot == 0.0);
    }
    CHECK(profile.half_period() == doctest::Approx(kPi / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("integrate_theta: half-period equals the turning-point time integral") {
    const TorusParams p{0, 1, 0.4};
    const auto profile = integrate_theta(p, 6.0, 1e-11);
    const double oracle = oracles::half_period_time_integral(p, 1e-13);
    CHECK(std::fabs(profile.half_period() - oracle) < 1e-9);

    // theta at the half-period time is the lower turning point.
    const auto tp = turning_points(p);
    CHECK(std::fabs(profile.eval(profile.half_period()).theta - tp.theta_minus) < 1e-9);
}

TEST_CASE("integrate_theta: energy conservation over 50 half-periods") {
    const TorusParams p{0, 1, 0.4};
    const auto short_profile = integrate_theta(p, 5.0, 1e-11);
    const double span = 50.0 * short_profile.half_period();
    const auto profile = integrate_theta(p, span, 1e-10);

    CHECK(profile.max_energy_residual() <= 1e-9);
    double worst_h = 0.0;
    for (const auto& n : profile.nodes()) {
        const double h = hamiltonian(n.theta, canonical_momentum(n.theta, n.theta_dot, p), p);
        worst_h = std::max(worst_h, std::fabs(h - p.energy));
    }
    CHECK(worst_h <= 1e-9);
}

TEST_CASE("profile: reflection symmetry and interpolation consistency") {
    const TorusParams p{1, 1, 0.35};
    const auto profile = integrate_theta(p, 12.0, 1e-11);
    const double tstar = profile.half_period();

    SplitMix64 rng(6);
    for (int i = 0; i < 200; ++i) {
        const double tau = rng.uniform(0.0, tstar * 0.95);
        CHECK(std::fabs(profile.eval(tstar + tau).theta - profile.eval(tstar - tau).theta) < 1e-9);
    }

    // Between-node evaluation stays on the energy shell.
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double t = rng.uniform(0.0, 12.0);
        const auto jet = profile.eval(t);
        worst = std::max(worst,
                         std::fabs(jet.theta_dot * jet.theta_dot + potential(jet.theta, p)));
    }
    CHECK(worst < 1e-9);

    // Folding beyond the span agrees with the in-span values one period back.
    for (int i = 0; i < 50; ++i) {
        const double t = rng.uniform(0.0, 5.0);
        const auto direct = profile.eval(t + profile.period());
        const auto base = profile.eval(t);
        CHECK(std::fabs(direct.theta - base.theta) < 1e-9);
        CHECK(std::fabs(direct.theta_dot - base.theta_dot) < 1e-8);
    }
}

TEST_CASE("profile stays strictly inside the turning band") {
    const TorusParams p{0, 1, 0.25};
    const auto profile = integrate_theta(p, 20.0, 1e-11);
    const auto tp = turning_points(p);
    for (const auto& n : profile.nodes()) {
        CHECK(n.theta > 0.0);
        CHECK(n.theta < kPi / 2);
        CHECK(n.theta > tp.theta_minus - 1e-9);
        CHECK(n.theta < tp.theta_plus + 1e-9);
    }
}

TEST_CASE("integrate_theta: parameter validation") {
    CHECK_THROWS_AS((void)integrate_theta({0, 1, 0.7}, 1.0), DomainError);
    CHECK_THROWS_AS((void)integrate_theta({0, 0, 0.4}, 1.0), DomainError);
    CHECK_THROWS_AS((void)integrate_theta({0, 1, 0.4}, -1.0), DomainError);
    CHECK_THROWS_AS((void)integrate_theta({0, 1, 0.4}, 1.0, -1e-9), DomainError);
}

TEST_SUITE_END();
