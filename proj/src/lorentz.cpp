#include "spacelike/lorentz.hpp"

#include <algorithm>

namespace spacelike {

const char* to_string(CausalCharacter c) {
    switch (c) {
    case CausalCharacter::Spacelike: return "spacelike";
    case CausalCharacter::Timelike: return "timelike";
    case CausalCharacter::Lightlike: return "lightlike";
    case CausalCharacter::Zero: return "zero";
    }
    return "?";
}

Mat2 boost(double rapidity) {
    const double ch = std::cosh(rapidity);
    const double sh = std::sinh(rapidity);
    return {ch, sh, sh, ch};
}

Mat2 rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, -s, s, c};
}

double lorentz_norm(const Vec2L& v) { return std::sqrt(std::abs(inner2(v, v))); }

namespace {

template <class Components>
CausalCharacter classify_causal(const Components& comps, double q, double scale) {
    const double tol = kCausalTolerance * scale;
    const bool all_small =
        std::all_of(comps.begin(), comps.end(), [&](double c) { return std::abs(c) <= tol; });
    if (all_small) return CausalCharacter::Zero;
    if (std::abs(q) <= kCausalTolerance * scale * scale) return CausalCharacter::Lightlike;
    return q > 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

} // namespace

CausalCharacter causal_character(const Vec2L& v, double scale) {
    return classify_causal(std::array<double, 2>{v.c1, v.c2}, inner2(v, v), scale);
}

CausalCharacter causal_character(const Vec4L& v, double scale) {
    return classify_causal(v.x, inner4(v, v), scale);
}

double euclid_norm(const Vec4L& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
}

namespace {

double det3(double a, double b, double c, double d, double e, double f, double g, double h,
            double i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// Cofactor of entry (row, 0) in the matrix whose columns are (x, a, b, c).
double first_column_cofactor(int row, const Vec4L& a, const Vec4L& b, const Vec4L& c) {
    std::array<int, 3> r{};
    for (int i = 0, k = 0; i < 4; ++i)
        if (i != row) r[k++] = i;
    const double minor = det3(a[r[0]], b[r[0]], c[r[0]], a[r[1]], b[r[1]], c[r[1]], a[r[2]],
                              b[r[2]], c[r[2]]);
    return (row % 2 == 0) ? minor : -minor;
}

} // namespace

double det4(const Vec4L& a, const Vec4L& b, const Vec4L& c, const Vec4L& d) {
    double s = 0.0;
    for (int row = 0; row < 4; ++row) s += a[row] * first_column_cofactor(row, b, c, d);
    return s;
}

Vec4L lorentz_cross4(const Vec4L& a, const Vec4L& b, const Vec4L& c) {
    // det(x,a,b,c) = sum_i x_i C_i; inner4(w,x) = sum_i eta_i w_i x_i.
    Vec4L w;
    for (int i = 0; i < 4; ++i) w[i] = first_column_cofactor(i, a, b, c);
    w[3] = -w[3];
    return w;
}

} // namespace spacelike
