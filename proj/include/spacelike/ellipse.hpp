#pragma once
// The curvature ellipse of a quadratic map: the image of the unit tangent
// circle, an ellipse, a segment, or a point in R^{1,1}.

#include "spacelike/quadratic_map.hpp"

#include <variant>

namespace spacelike {

struct EllipseNonDegenerate {
    Frame2L frame; // axes (u~1, u~2)
    double a = 0;
    double b = 0;
};

struct EllipseSegment {
    Vec2L xi; // endpoints are center +- xi
    CausalCharacter character = CausalCharacter::Zero;
};

struct EllipsePoint {};

struct EllipseData {
    Vec2L center;
    std::variant<EllipseNonDegenerate, EllipseSegment, EllipsePoint> shape;
};

/// H + X(theta) N1 + Y(theta) N2.
Vec2L ellipse_point(const QuadraticMap& q, double theta);

EllipseData ellipse_data(const QuadraticMap& q, double scale);

/// <nu, u_Phi^{-1}(nu)>. Throws SingularPhi when K_N vanishes.
double phi_star(const QuadraticMap& q, const Vec2L& nu);
double phi_star(const QuadraticMap& q, const Vec2L& nu, double scale);

/// Support function of the filled ellipse about its center H.
double support_function(const QuadraticMap& q, const Vec2L& nu);

enum class OriginPosition { Inside, On, Outside, Undefined };

const char* to_string(OriginPosition p);

OriginPosition origin_position(const QuadraticMap& q, double scale);

/// Left-hand side of the implicit ellipse equation
/// eps(X,Y) = (nu'^2+mu'^2) X^2 + (nu^2+mu^2) Y^2 - 2 (nu'nu+mu mu') XY.
double ellipse_equation_lhs(const QuadraticMap& q, double X, double Y);

} // namespace spacelike
