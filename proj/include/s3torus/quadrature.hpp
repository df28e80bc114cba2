#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "s3torus/common.hpp"

namespace s3torus {

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// Columns: abscissa, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
inline constexpr double kGk15[8][3] = {
    {0.000000000000000000e+00, 4.179591836734693878e-01, 2.094821410847278280e-01},
    {4.058451513773971669e-01, 3.818300505051189449e-01, 1.903505780647854099e-01},
    {7.415311855993944398e-01, 2.797053914892766679e-01, 1.406532597155259187e-01},
    {9.491079123427585245e-01, 1.294849661688696933e-01, 6.309209262997855329e-02},
    {2.077849550078984676e-01, 0.0, 2.044329400752988924e-01},
    {5.860872354676911303e-01, 0.0, 1.690047266392679028e-01},
    {8.648644233597690727e-01, 0.0, 1.047900103222501838e-01},
    {9.914553711208126392e-01, 0.0, 2.293532201052922496e-02},
};

template <class Func>
std::pair<double, double> gk15(const Func& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double gauss = kGk15[0][1] * f0;
    double kron = kGk15[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGk15[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        gauss += kGk15[i][1] * fi;
        kron += kGk15[i][2] * fi;
    }
    gauss *= half;
    kron *= half;

    // QUADPACK-style sharpened error estimate.
    double err = std::fabs(kron - gauss);
    err = 200.0 * err * std::sqrt(std::min(1.0, 200.0 * err));
    return {kron, err};
}

}  // namespace detail

struct QuadratureResult {
    double value = 0;
    double error = 0;
    int intervals = 0;
};

/// Adaptive Gauss-Kronrod 7(15) integration of f over [a, b].
/// Bisects the interval with the largest error estimate until the summed
/// estimate meets abs_tol + rel_tol*|integral|. Throws ToleranceError if the
/// interval budget is exhausted first.
template <class Func>
QuadratureResult integrate_adaptive(const Func& f, double a, double b,
                                    double abs_tol = 1e-12, double rel_tol = 1e-12,
                                    int max_intervals = 20000) {
    struct Piece {
        double a, b, value, error;
    };

    auto [v0, e0] = detail::gk15(f, a, b);
    std::vector<Piece> pieces{{a, b, v0, e0}};
    pieces.reserve(256);

    for (;;) {
        double total = 0, err = 0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            total += pieces[i].value;
            err += pieces[i].error;
            if (pieces[i].error > pieces[worst].error) worst = i;
        }
        if (err <= abs_tol + rel_tol * std::fabs(total) || pieces[worst].error == 0.0) {
            return {total, err, static_cast<int>(pieces.size())};
        }
        if (static_cast<int>(pieces.size()) >= max_intervals) {
            throw ToleranceError("integrate_adaptive: interval budget exhausted");
        }
        const Piece p = pieces[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) {
            throw ToleranceError("integrate_adaptive: interval underflow before tolerance met");
        }
        auto [vl, el] = detail::gk15(f, p.a, mid);
        auto [vr, er] = detail::gk15(f, mid, p.b);
        pieces[worst] = {p.a, mid, vl, el};
        pieces.push_back({mid, p.b, vr, er});
    }
}

}  // namespace s3torus
