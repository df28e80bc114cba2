#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "s3torus/common.hpp"

namespace s3torus {

struct Rk45Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_max = 2e-3;   // also bounds the dense-output (Hermite) error
    double h_min = 1e-13;
    long max_steps = 50'000'000;
};

/// Dormand-Prince 5(4) embedded pair with step-size control.
/// f(t, y) -> dy/dt; sink(t, y, dy) is invoked at t0 and after every accepted
/// step, supplying the derivative for Hermite dense output.
template <std::size_t N, class F, class Sink>
void integrate_rk45(const F& f, std::array<double, N> y, double t0, double t1,
                    const Rk45Options& opt, Sink&& sink) {
    using State = std::array<double, N>;

    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // 5th-order minus embedded 4th-order weights (error estimator).
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    double t = t0;
    State k1;
    f(t, y, k1);
    sink(t, y, k1);

    double h = std::min(opt.h_max, (t1 - t0) * 0.1);
    long steps = 0;
    while (t < t1) {
        if (++steps > opt.max_steps) {
            throw ToleranceError("integrate_rk45: step budget exhausted");
        }
        h = std::min(h, t1 - t);
        State k2, k3, k4, k5, k6, k7, yt;

        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
        f(t + h / 5.0, yt, k2);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        f(t + 3.0 * h / 10.0, yt, k3);
        for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        f(t + 4.0 * h / 5.0, yt, k4);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        f(t + 8.0 * h / 9.0, yt, k5);
        for (std::size_t i = 0; i < N; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        f(t + h, yt, k6);

        State y5;
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        f(t + h, y5, k7);  // FSAL

        double err = 0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double scale = opt.atol + opt.rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
            err = std::max(err, std::fabs(ei) / scale);
        }

        const bool accepted = err <= 1.0;
        if (accepted) {
            t += h;
            y = y5;
            k1 = k7;
            sink(t, y, k1);
        }
        const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        h = std::min(h, opt.h_max);
        if (!accepted && h < opt.h_min) {
            throw ToleranceError("integrate_rk45: step size underflow");
        }
    }
}

}  // namespace s3torus
