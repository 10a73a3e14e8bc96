#pragma once
// Linear algebra of the Minkowski plane R^{1,1} and of Minkowski space R^{3,1}.
//
// Vectors are stored in canonical coordinates. Null-basis coordinates are a
// view computed on demand: with N1 = (u1+u2)/sqrt2 and N2 = (u2-u1)/sqrt2,
// a vector v = n1*N1 + n2*N2 satisfies <v,v> = -2*n1*n2.

#include <array>
#include <cmath>

namespace spacelike {

inline constexpr double kHalfSqrt2 = 0.70710678118654752440;

/// Relative tolerance of causal_character().
inline constexpr double kCausalTolerance = 1e-9;

struct Vec2L {
    double c1 = 0.0; // spacelike axis u1
    double c2 = 0.0; // timelike axis u2

    constexpr Vec2L() = default;
    constexpr Vec2L(double a, double b) : c1(a), c2(b) {}

    /// Builds n1*N1 + n2*N2.
    static constexpr Vec2L from_null(double n1, double n2) {
        return {kHalfSqrt2 * (n1 - n2), kHalfSqrt2 * (n1 + n2)};
    }
    /// Coordinates (n1, n2) in the null basis (N1, N2).
    constexpr std::array<double, 2> null_coords() const {
        return {kHalfSqrt2 * (c1 + c2), kHalfSqrt2 * (c2 - c1)};
    }

    constexpr Vec2L operator+(const Vec2L& o) const { return {c1 + o.c1, c2 + o.c2}; }
    constexpr Vec2L operator-(const Vec2L& o) const { return {c1 - o.c1, c2 - o.c2}; }
    constexpr Vec2L operator-() const { return {-c1, -c2}; }
    constexpr Vec2L operator*(double s) const { return {c1 * s, c2 * s}; }
    constexpr Vec2L operator/(double s) const { return {c1 / s, c2 / s}; }
    constexpr bool operator==(const Vec2L&) const = default;
};
constexpr Vec2L operator*(double s, const Vec2L& v) { return v * s; }

struct Vec4L {
    std::array<double, 4> x{};

    constexpr Vec4L() = default;
    constexpr Vec4L(double a, double b, double c, double d) : x{a, b, c, d} {}

    constexpr double operator[](int i) const { return x[i]; }
    constexpr double& operator[](int i) { return x[i]; }

    constexpr Vec4L operator+(const Vec4L& o) const {
        return {x[0] + o.x[0], x[1] + o.x[1], x[2] + o.x[2], x[3] + o.x[3]};
    }
    constexpr Vec4L operator-(const Vec4L& o) const {
        return {x[0] - o.x[0], x[1] - o.x[1], x[2] - o.x[2], x[3] - o.x[3]};
    }
    constexpr Vec4L operator-() const { return {-x[0], -x[1], -x[2], -x[3]}; }
    constexpr Vec4L operator*(double s) const {
        return {x[0] * s, x[1] * s, x[2] * s, x[3] * s};
    }
    constexpr Vec4L operator/(double s) const {
        return {x[0] / s, x[1] / s, x[2] / s, x[3] / s};
    }
    constexpr bool operator==(const Vec4L&) const = default;
};
constexpr Vec4L operator*(double s, const Vec4L& v) { return v * s; }

/// Orthonormal, positively oriented, time-oriented frame of R^{1,1}.
struct Frame2L {
    Vec2L f1; // spacelike unit
    Vec2L f2; // timelike unit, future-directed
};

enum class CausalCharacter { Spacelike, Timelike, Lightlike, Zero };

const char* to_string(CausalCharacter c);

/// General 2x2 real matrix, row-major.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    constexpr double trace() const { return m00 + m11; }
    constexpr double det() const { return m00 * m11 - m01 * m10; }
    constexpr Mat2 transpose() const { return {m00, m10, m01, m11}; }
    constexpr Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    constexpr Mat2 operator+(const Mat2& o) const {
        return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
    }
    constexpr Mat2 operator-(const Mat2& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    constexpr Mat2 operator*(double s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
    constexpr Vec2L apply(const Vec2L& v) const {
        return {m00 * v.c1 + m01 * v.c2, m10 * v.c1 + m11 * v.c2};
    }
    constexpr std::array<double, 2> apply(const std::array<double, 2>& v) const {
        return {m00 * v[0] + m01 * v[1], m10 * v[0] + m11 * v[1]};
    }
    constexpr bool operator==(const Mat2&) const = default;
};

// --- R^{1,1} ---------------------------------------------------------------

constexpr double inner2(const Vec2L& a, const Vec2L& b) { return a.c1 * b.c1 - a.c2 * b.c2; }

/// Determinant of (a, b) in canonical coordinates.
constexpr double mixed_product2(const Vec2L& a, const Vec2L& b) {
    return a.c1 * b.c2 - a.c2 * b.c1;
}

struct NullBasis {
    Vec2L n1;
    Vec2L n2;
};

/// (N1, N2): null, future-directed, positively oriented, <N1,N2> = -1.
constexpr NullBasis null_basis() {
    return {Vec2L{kHalfSqrt2, kHalfSqrt2}, Vec2L{-kHalfSqrt2, kHalfSqrt2}};
}

/// Element of SO_{1,1}: [[cosh t, sinh t], [sinh t, cosh t]].
Mat2 boost(double rapidity);

/// Element of SO_2 acting on tangent pairs.
Mat2 rotation(double theta);

/// Norm sqrt(|<v,v>|).
double lorentz_norm(const Vec2L& v);

CausalCharacter causal_character(const Vec2L& v, double scale);

// --- R^{3,1} ---------------------------------------------------------------

constexpr double inner4(const Vec4L& a, const Vec4L& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3];
}

double euclid_norm(const Vec4L& v);

/// Determinant of the 4x4 matrix with columns (a, b, c, d).
double det4(const Vec4L& a, const Vec4L& b, const Vec4L& c, const Vec4L& d);

/// The vector w with inner4(w, x) = det4(x, a, b, c) for every x.
Vec4L lorentz_cross4(const Vec4L& a, const Vec4L& b, const Vec4L& c);

CausalCharacter causal_character(const Vec4L& v, double scale);

} // namespace spacelike
