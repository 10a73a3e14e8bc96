#include "spacelike/ellipse.hpp"

#include "spacelike/errors.hpp"

#include <cmath>

namespace spacelike {

Vec2L ellipse_point(const QuadraticMap& q, double theta) {
    const double c = std::cos(2 * theta);
    const double s = std::sin(2 * theta);
    const double X = q.mu() * c + q.nu() * s;
    const double Y = q.mu_p() * c + q.nu_p() * s;
    return Vec2L::from_null(q.h1() + X, q.h2() + Y);
}

double ellipse_equation_lhs(const QuadraticMap& q, double X, double Y) {
    const Mat2 m = phi_null_matrix(q);
    return m.m00 * X * X + m.m11 * Y * Y - 2 * m.m01 * X * Y;
}

EllipseData ellipse_data(const QuadraticMap& q, double scale) {
    EllipseData e;
    e.center = Vec2L::from_null(q.h1(), q.h2());
    const InvariantSet inv = invariants(q, scale);
    const ReductionResult r = reduce_phi(q, scale);

    if (std::holds_alternative<NullPhi>(r)) {
        e.shape = EllipsePoint{};
        return e;
    }
    if (!is_negligible(inv.K_N, scale, 2)) {
        const auto& d = std::get<Diagonalizable>(r);
        e.shape = EllipseNonDegenerate{d.frame, std::sqrt(std::max(d.a2, 0.0)),
                                       std::sqrt(std::max(d.b2, 0.0))};
        return e;
    }

    // Segment [H - xi, H + xi] with xi = sqrt(P) N1 +- sqrt(P') N2, the sign
    // being that of nu nu' + mu mu'. The sign of xi is fixed so its N1
    // coordinate is non-negative (ties: N2 coordinate non-negative).
    const Mat2 m = phi_null_matrix(q);
    const double sp = std::sqrt(m.m11);
    double spp = std::sqrt(m.m00);
    if (m.m01 < 0) spp = -spp;
    double n1 = sp;
    double n2 = spp;
    if (n1 < 0 || (n1 == 0 && n2 < 0)) {
        n1 = -n1;
        n2 = -n2;
    }
    EllipseSegment seg;
    seg.xi = Vec2L::from_null(n1, n2);
    const double t = inv.H_norm2 - inv.K;
    if (is_negligible(t, scale, 2))
        seg.character = CausalCharacter::Lightlike;
    else
        seg.character = t > 0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
    e.shape = seg;
    return e;
}

double phi_star(const QuadraticMap& q, const Vec2L& nu) {
    return phi_star(q, nu, default_scale(q));
}

double phi_star(const QuadraticMap& q, const Vec2L& nu, double scale) {
    const Mat2 m = phi_null_matrix(q);
    const double det = m.det(); // K_N^2 / 4
    if (is_negligible(2 * std::sqrt(std::max(det, 0.0)), scale, 2)) throw SingularPhi();
    // Phi*(nu) = (J n)^T M^{-1} (J n) with n the null coordinates of nu.
    const auto [n1, n2] = nu.null_coords();
    const double j1 = -n2;
    const double j2 = -n1;
    return (m.m11 * j1 * j1 - 2 * m.m01 * j1 * j2 + m.m00 * j2 * j2) / det;
}

double support_function(const QuadraticMap& q, const Vec2L& nu) {
    return std::sqrt(std::max(form_Phi(q, nu), 0.0));
}

const char* to_string(OriginPosition p) {
    switch (p) {
    case OriginPosition::Inside: return "inside";
    case OriginPosition::On: return "on";
    case OriginPosition::Outside: return "outside";
    case OriginPosition::Undefined: return "undefined";
    }
    return "?";
}

OriginPosition origin_position(const QuadraticMap& q, double scale) {
    const InvariantSet inv = invariants(q, scale);
    if (is_negligible(inv.K_N, scale, 2)) return OriginPosition::Undefined;
    if (is_negligible(inv.Delta, scale, 4)) return OriginPosition::On;
    return inv.Delta > 0 ? OriginPosition::Outside : OriginPosition::Inside;
}

} // namespace spacelike
