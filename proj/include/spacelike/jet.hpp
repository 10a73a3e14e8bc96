#pragma once
// Second-order forward-mode jets in two variables (u, v). Fixture charts are
// written once as generic functions and evaluated on Jet to obtain exact
// first and second partial derivatives.

#include <cmath>

namespace spacelike {

struct Jet {
    double f = 0, fu = 0, fv = 0, fuu = 0, fuv = 0, fvv = 0;

    constexpr Jet() = default;
    constexpr Jet(double c) : f(c) {} // NOLINT: constants promote implicitly
    constexpr Jet(double f_, double fu_, double fv_, double fuu_, double fuv_, double fvv_)
        : f(f_), fu(fu_), fv(fv_), fuu(fuu_), fuv(fuv_), fvv(fvv_) {}

    static constexpr Jet var_u(double u) { return {u, 1, 0, 0, 0, 0}; }
    static constexpr Jet var_v(double v) { return {v, 0, 1, 0, 0, 0}; }

    friend constexpr Jet operator+(const Jet& a, const Jet& b) {
        return {a.f + b.f, a.fu + b.fu, a.fv + b.fv, a.fuu + b.fuu, a.fuv + b.fuv, a.fvv + b.fvv};
    }
    friend constexpr Jet operator-(const Jet& a, const Jet& b) {
        return {a.f - b.f, a.fu - b.fu, a.fv - b.fv, a.fuu - b.fuu, a.fuv - b.fuv, a.fvv - b.fvv};
    }
    friend constexpr Jet operator-(const Jet& a) {
        return {-a.f, -a.fu, -a.fv, -a.fuu, -a.fuv, -a.fvv};
    }
    friend constexpr Jet operator*(const Jet& a, const Jet& b) {
        return {a.f * b.f,
                a.fu * b.f + a.f * b.fu,
                a.fv * b.f + a.f * b.fv,
                a.fuu * b.f + 2 * a.fu * b.fu + a.f * b.fuu,
                a.fuv * b.f + a.fu * b.fv + a.fv * b.fu + a.f * b.fuv,
                a.fvv * b.f + 2 * a.fv * b.fv + a.f * b.fvv};
    }
    friend constexpr Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    /// g(a) given g(a.f), g'(a.f), g''(a.f).
    friend constexpr Jet chain(const Jet& a, double g, double g1, double g2) {
        return {g,
                g1 * a.fu,
                g1 * a.fv,
                g2 * a.fu * a.fu + g1 * a.fuu,
                g2 * a.fu * a.fv + g1 * a.fuv,
                g2 * a.fv * a.fv + g1 * a.fvv};
    }
    friend constexpr Jet reciprocal(const Jet& a) {
        const double r = 1.0 / a.f;
        return chain(a, r, -r * r, 2 * r * r * r);
    }
};

inline Jet sin(const Jet& a) {
    const double s = std::sin(a.f), c = std::cos(a.f);
    return chain(a, s, c, -s);
}
inline Jet cos(const Jet& a) {
    const double s = std::sin(a.f), c = std::cos(a.f);
    return chain(a, c, -s, -c);
}
inline Jet exp(const Jet& a) {
    const double e = std::exp(a.f);
    return chain(a, e, e, e);
}
inline Jet sqrt(const Jet& a) {
    const double r = std::sqrt(a.f);
    return chain(a, r, 0.5 / r, -0.25 / (r * a.f));
}
inline Jet cosh(const Jet& a) {
    const double c = std::cosh(a.f), s = std::sinh(a.f);
    return chain(a, c, s, c);
}
inline Jet sinh(const Jet& a) {
    const double c = std::cosh(a.f), s = std::sinh(a.f);
    return chain(a, s, c, s);
}

} // namespace spacelike
