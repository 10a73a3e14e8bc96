#pragma once
// Quadratic maps R^2 -> R^{1,1}: the associated forms L, Q, A, Phi, the
// numerical invariants (H, |H|^2, K, K_N, Delta, zeta), the reduction of the
// operator u_Phi, orbit classification, and reconstruction from (L, Phi, A).

#include "spacelike/lorentz.hpp"

#include <optional>
#include <variant>

namespace spacelike {

/// Relative threshold deciding that a classification quantity vanishes.
/// A quantity of degree d in the coefficients is zero when |value| <= tau * scale^d.
inline constexpr double kClassTolerance = 1e-8;

constexpr bool is_negligible(double value, double scale, int degree,
                             double tau = kClassTolerance) {
    double s = 1.0;
    for (int i = 0; i < degree; ++i) s *= scale;
    return (value < 0 ? -value : value) <= tau * s;
}

/// q = q1 N1 + q2 N2 with q1 = [[x, z], [z, y]] and q2 = [[u, w], [w, v]]
/// in the canonical tangent basis.
struct QuadraticMap {
    double x = 0, y = 0, z = 0, u = 0, v = 0, w = 0;

    constexpr double h1() const { return 0.5 * (x + y); }
    constexpr double h2() const { return 0.5 * (u + v); }
    constexpr double mu() const { return 0.5 * (x - y); }
    constexpr double nu() const { return z; }
    constexpr double mu_p() const { return 0.5 * (u - v); }
    constexpr double nu_p() const { return w; }

    constexpr Mat2 q1() const { return {x, z, z, y}; }
    constexpr Mat2 q2() const { return {u, w, w, v}; }

    static constexpr QuadraticMap from_components(const Mat2& q1, const Mat2& q2) {
        return {q1.m00, q1.m11, 0.5 * (q1.m01 + q1.m10),
                q2.m00, q2.m11, 0.5 * (q2.m01 + q2.m10)};
    }

    /// q(X) for a tangent vector X = (X1, X2).
    Vec2L operator()(double X1, double X2) const;

    double max_abs() const;

    constexpr QuadraticMap operator*(double s) const {
        return {x * s, y * s, z * s, u * s, v * s, w * s};
    }
    constexpr bool operator==(const QuadraticMap&) const = default;
};

// --- forms -----------------------------------------------------------------

/// Matrix of the shape operator S_nu in the canonical tangent basis.
Mat2 shape_operator(const QuadraticMap& q, const Vec2L& nu);

double form_L(const QuadraticMap& q, const Vec2L& nu);
double form_Q(const QuadraticMap& q, const Vec2L& nu);
/// The scalar alpha/2 where [S_nu1, S_nu2] = [[0, -alpha], [alpha, 0]].
double form_A(const QuadraticMap& q, const Vec2L& nu1, const Vec2L& nu2);
double form_Phi(const QuadraticMap& q, const Vec2L& nu);
/// Polar form of Phi.
double form_Phi_polar(const QuadraticMap& q, const Vec2L& nu1, const Vec2L& nu2);

/// Matrix of Phi in null-basis coordinates: [[mu'^2+nu'^2, c], [c, mu^2+nu^2]],
/// c = nu nu' + mu mu'.
Mat2 phi_null_matrix(const QuadraticMap& q);

/// Matrix of u_Phi acting on null-basis coordinates.
Mat2 u_phi_null_matrix(const QuadraticMap& q);

// --- invariants and reduction ----------------------------------------------

struct InvariantSet {
    Vec2L H;
    double H_norm2 = 0;
    double K = 0;
    double K_N = 0;
    double Delta = 0;
    std::optional<double> zeta;
    std::optional<double> a2;
    std::optional<double> b2;
    std::optional<double> alpha;
    std::optional<double> beta;
};

enum class MatrixCase { A1, A2 };

struct Diagonalizable {
    Frame2L frame; // (u~1, u~2)
    double a2 = 0;
    double b2 = 0;
    double alpha = 0; // H = alpha u~1 + beta u~2
    double beta = 0;
};

struct NonDiagonalizable {
    NullBasis null_frame; // (N~1, N~2)
    MatrixCase matrix_case = MatrixCase::A1;
    std::array<double, 2> h_tilde{}; // coordinates of H in (N~1, N~2)
    std::optional<double> zeta;
};

struct NullPhi {};

using ReductionResult = std::variant<Diagonalizable, NonDiagonalizable, NullPhi>;

/// Characteristic magnitude used when no scale is supplied: max |coefficient|.
double default_scale(const QuadraticMap& q);

InvariantSet invariants(const QuadraticMap& q);
InvariantSet invariants(const QuadraticMap& q, double scale);

ReductionResult reduce_phi(const QuadraticMap& q);
ReductionResult reduce_phi(const QuadraticMap& q, double scale);

// --- classification --------------------------------------------------------

enum class PointClassTag {
    Umbilic,
    InflectionSpacelike,
    InflectionTimelike,
    InflectionLightlike,
    Regular,
    SemiUmbilic,
};

struct PointClass {
    PointClassTag tag = PointClassTag::Umbilic;
    std::optional<double> zeta; // InflectionLightlike only
};

const char* to_string(PointClassTag tag);

PointClass classify(const QuadraticMap& q, double scale);

// --- group action, equivalence, reconstruction -----------------------------

/// g1 o q o g2 with g1 = boost(rapidity) and g2 = rotation(theta).
QuadraticMap act(const QuadraticMap& q, double rapidity, double theta);

/// True when q1 and q2 lie in the same orbit up to the finite reflection
/// groups of the classification.
bool equivalent(const QuadraticMap& q1, const QuadraticMap& q2, double tol);

/// The triple (L, Phi, A) of q: L as the vector H with L = <H, .>, Phi as its
/// symmetric matrix in canonical coordinates, A as the scalar a with
/// A = a * omega0 (a = K_N / 2).
struct FormTriple {
    Vec2L L;
    Mat2 Phi;
    double A = 0;
};

FormTriple forms(const QuadraticMap& q);

/// A quadratic map whose forms are (L, Phi, A). Throws InvalidTriple when Phi
/// is not non-negative or det Phi != A^2 beyond tolerance.
QuadraticMap reconstruct(const Vec2L& L, const Mat2& Phi, double A);

} // namespace spacelike
