#include <doctest.h>

#include <cmath>

#include "s3torus/elliptic.hpp"
#include "s3torus/quadrature.hpp"

using namespace s3torus;

namespace {

double pi3_quadrature(double amp, double n, double m) {
    return integrate_adaptive(
               [n, m](double th) {
                   const double s = std::sin(th);
                   return 1.0 / ((1.0 - n * s * s) * std::sqrt(1.0 - m * s * s));
               },
               0.0, amp, 1e-14, 1e-14)
        .value;
}

}  // namespace

TEST_SUITE_BEGIN("elliptic");

TEST_CASE("adaptive quadrature sanity") {
    CHECK(integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, kPi).value ==
          doctest::Approx(2.0).epsilon(1e-13));
    // Oscillatory integrand forces subdivision.
    CHECK(integrate_adaptive([](double x) { return std::sin(30.0 * x) * std::sin(30.0 * x); },
                             0.0, 2 * kPi)
              .value == doctest::Approx(kPi).epsilon(1e-12));
    // Endpoint singularity with a tiny interval budget exhausts the refinement.
    CHECK_THROWS_AS((void)integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                                             1.0, 1e-14, 1e-14, 4),
                    ToleranceError);
}

TEST_CASE("Carlson forms: published anchor values") {
    CHECK(carlson_rf(1.0, 2.0, 0.0) == doctest::Approx(1.3110287771461).epsilon(1e-12));
    CHECK(carlson_rj(0.0, 1.0, 2.0, 3.0) == doctest::Approx(0.77688623778582).epsilon(1e-12));
    CHECK(carlson_rc(0.0, 0.25) == doctest::Approx(kPi).epsilon(1e-13));
    // R_F with equal arguments: R_F(x, x, x) = x^{-1/2}.
    CHECK(carlson_rf(4.0, 4.0, 4.0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK_THROWS_AS((void)carlson_rf(-1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)carlson_rj(1.0, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("third kind: degenerate parameters") {
    for (double amp : {0.1, 0.7, 1.2, kPi / 2}) {
        CHECK(elliptic_pi_incomplete(amp, 0.0, 0.0) == doctest::Approx(amp).epsilon(1e-14));
    }
    CHECK(elliptic_pi_incomplete(kPi / 2, 0.0, 0.0) == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("third kind matches the defining integral") {
    CHECK(std::fabs(elliptic_pi_incomplete(kPi / 3, 0.3, 0.5) -
                    pi3_quadrature(kPi / 3, 0.3, 0.5)) < 1e-12);

    double worst = 0;
    for (double n : {-5.0, -1.0, 0.0, 0.4, 0.9}) {
        for (double m : {0.0, 0.25, 0.5, 0.75, 0.95}) {
            for (double amp : {0.2, 0.6, 1.0, 1.3, kPi / 2}) {
                worst = std::max(worst, std::fabs(elliptic_pi_incomplete(amp, n, m) -
                                                  pi3_quadrature(amp, n, m)));
            }
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("third kind: pole rejection") {
    CHECK_THROWS_AS((void)elliptic_pi_incomplete(kPi / 2, 1.5, 0.2), DomainError);
    CHECK_THROWS_AS((void)elliptic_pi_incomplete(kPi / 2, 0.2, 1.0), DomainError);
    CHECK_THROWS_AS((void)elliptic_pi_incomplete(2.0, 0.2, 0.2), DomainError);
}

TEST_SUITE_END();
