#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace s3torus {

inline constexpr double kPi = 3.14159265358979323846;

// ---- error taxonomy -----------------------------------------------------

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoSolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoRealRootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleProximityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- small fixed-size linear algebra -------------------------------------

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

struct Vec4 {
    std::array<double, 4> c{};

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec4 operator+(const Vec4& o) const { return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]}}; }
    Vec4 operator-(const Vec4& o) const { return {{c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]}}; }
    Vec4 operator*(double s) const { return {{c[0] * s, c[1] * s, c[2] * s, c[3] * s}}; }

    double dot(const Vec4& o) const { return c[0] * o.c[0] + c[1] * o.c[1] + c[2] * o.c[2] + c[3] * o.c[3]; }
    double norm() const { return std::sqrt(dot(*this)); }
};

inline Vec4 operator*(double s, const Vec4& v) { return v * s; }

/// Symmetric-or-not 2x2 matrix with row-major entries.
struct Mat2 {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 diag(double d1, double d2) { return {d1, 0, 0, d2}; }

    double det() const { return a11 * a22 - a12 * a21; }
    double trace() const { return a11 + a22; }

    Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
    Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }

    Mat2 transpose() const { return {a11, a21, a12, a22}; }

    Mat2 inverse() const {
        const double d = det();
        if (d == 0.0) throw SingularityError("Mat2::inverse: singular matrix");
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }

    double max_abs() const {
        return std::max(std::max(std::fabs(a11), std::fabs(a12)),
                        std::max(std::fabs(a21), std::fabs(a22)));
    }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

// ---- deterministic sampling ----------------------------------------------

/// splitmix64; used for reproducible quasi-random sampling in verification
/// sweeps (identical sequences on every platform, unlike std:: distributions).
class SplitMix64 {
 public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform double in [lo, hi)
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

 private:
    std::uint64_t state_;
};

}  // namespace s3torus
