#include "spacelike/quadratic_map.hpp"

#include "spacelike/errors.hpp"

#include <algorithm>
#include <cmath>

namespace spacelike {

Vec2L QuadraticMap::operator()(double X1, double X2) const {
    const double n1 = x * X1 * X1 + 2 * z * X1 * X2 + y * X2 * X2;
    const double n2 = u * X1 * X1 + 2 * w * X1 * X2 + v * X2 * X2;
    return Vec2L::from_null(n1, n2);
}

double QuadraticMap::max_abs() const {
    return std::max({std::abs(x), std::abs(y), std::abs(z), std::abs(u), std::abs(v),
                     std::abs(w)});
}

double default_scale(const QuadraticMap& q) { return q.max_abs(); }

// --- forms -----------------------------------------------------------------

Mat2 shape_operator(const QuadraticMap& q, const Vec2L& nu) {
    // <N1, nu> = -nu2 and <N2, nu> = -nu1 in null coordinates.
    const auto [n1, n2] = nu.null_coords();
    return (q.q1() * n2 + q.q2() * n1) * -1.0;
}

double form_L(const QuadraticMap& q, const Vec2L& nu) {
    return 0.5 * shape_operator(q, nu).trace();
}

double form_Q(const QuadraticMap& q, const Vec2L& nu) { return shape_operator(q, nu).det(); }

double form_A(const QuadraticMap& q, const Vec2L& nu1, const Vec2L& nu2) {
    const Mat2 s1 = shape_operator(q, nu1);
    const Mat2 s2 = shape_operator(q, nu2);
    const Mat2 comm = s1 * s2 - s2 * s1;
    return 0.5 * comm.m10;
}

namespace {

Mat2 traceless(const Mat2& s) {
    const double h = 0.5 * s.trace();
    return {s.m00 - h, s.m01, s.m10, s.m11 - h};
}

} // namespace

double form_Phi(const QuadraticMap& q, const Vec2L& nu) {
    const Mat2 s = traceless(shape_operator(q, nu));
    return 0.5 * (s * s).trace();
}

double form_Phi_polar(const QuadraticMap& q, const Vec2L& nu1, const Vec2L& nu2) {
    const Mat2 s1 = traceless(shape_operator(q, nu1));
    const Mat2 s2 = traceless(shape_operator(q, nu2));
    return 0.5 * (s1 * s2).trace();
}

Mat2 phi_null_matrix(const QuadraticMap& q) {
    const double p = q.mu() * q.mu() + q.nu() * q.nu();
    const double pp = q.mu_p() * q.mu_p() + q.nu_p() * q.nu_p();
    const double c = q.nu() * q.nu_p() + q.mu() * q.mu_p();
    return {pp, c, c, p};
}

Mat2 u_phi_null_matrix(const QuadraticMap& q) {
    const Mat2 m = phi_null_matrix(q);
    // u_Phi = J^{-1} M with J the null-coordinate Gram matrix [[0,-1],[-1,0]].
    return {-m.m10, -m.m11, -m.m00, -m.m01};
}

// --- reduction -------------------------------------------------------------

namespace {

struct ClosedForm {
    Vec2L H;
    double H_norm2, K, K_N, Delta;
};

ClosedForm closed_form(const QuadraticMap& q) {
    ClosedForm cf{};
    cf.H = Vec2L::from_null(q.h1(), q.h2());
    cf.H_norm2 = -0.5 * (q.x + q.y) * (q.u + q.v);
    cf.K = -q.x * q.v - q.u * q.y + 2 * q.z * q.w;
    cf.K_N = -q.z * (q.u - q.v) + q.w * (q.x - q.y);
    cf.Delta = 0.25 * cf.K * cf.K - (q.u * q.v - q.w * q.w) * (q.x * q.y - q.z * q.z);
    return cf;
}

bool phi_vanishes(const QuadraticMap& q, double scale) {
    return is_negligible(q.mu(), scale, 1) && is_negligible(q.nu(), scale, 1) &&
           is_negligible(q.mu_p(), scale, 1) && is_negligible(q.nu_p(), scale, 1);
}

} // namespace

ReductionResult reduce_phi(const QuadraticMap& q) { return reduce_phi(q, default_scale(q)); }

ReductionResult reduce_phi(const QuadraticMap& q, double scale) {
    if (phi_vanishes(q, scale)) return NullPhi{};

    const ClosedForm cf = closed_form(q);
    const double trace_phi = cf.H_norm2 - cf.K;
    const double p = q.mu() * q.mu() + q.nu() * q.nu();
    const double pp = q.mu_p() * q.mu_p() + q.nu_p() * q.nu_p();

    if (is_negligible(cf.K_N, scale, 2) && is_negligible(trace_phi, scale, 2)) {
        NonDiagonalizable nd;
        if (p <= pp) {
            const double r = std::sqrt(pp);
            nd.matrix_case = MatrixCase::A1;
            nd.null_frame = {Vec2L::from_null(1.0 / r, 0.0), Vec2L::from_null(0.0, r)};
            nd.h_tilde = {q.h1() * r, q.h2() / r};
        } else {
            const double r = std::sqrt(p);
            nd.matrix_case = MatrixCase::A2;
            nd.null_frame = {Vec2L::from_null(r, 0.0), Vec2L::from_null(0.0, 1.0 / r)};
            nd.h_tilde = {q.h1() / r, q.h2() * r};
        }
        if (is_negligible(cf.Delta, scale, 4))
            nd.zeta = nd.matrix_case == MatrixCase::A1 ? nd.h_tilde[1] : nd.h_tilde[0];
        return nd;
    }

    // xi1 = sqrt(P) N1 - sqrt(P') N2 spans the a^2 eigenline,
    // xi2 = sqrt(P) N1 + sqrt(P') N2 the -b^2 eigenline.
    const double sp = std::sqrt(p);
    const double spp = std::sqrt(pp);
    const Vec2L xi1 = Vec2L::from_null(sp, -spp);
    const Vec2L xi2 = Vec2L::from_null(sp, spp);

    Diagonalizable d;
    d.frame.f1 = xi1 / lorentz_norm(xi1);
    d.frame.f2 = xi2 / lorentz_norm(xi2);
    const double root = std::sqrt(cf.K_N * cf.K_N + trace_phi * trace_phi);
    d.a2 = 0.5 * (trace_phi + root);
    d.b2 = 0.5 * (-trace_phi + root);
    d.alpha = inner2(cf.H, d.frame.f1);
    d.beta = -inner2(cf.H, d.frame.f2);
    return d;
}

InvariantSet invariants(const QuadraticMap& q) { return invariants(q, default_scale(q)); }

InvariantSet invariants(const QuadraticMap& q, double scale) {
    const ClosedForm cf = closed_form(q);
    InvariantSet inv;
    inv.H = cf.H;
    inv.H_norm2 = cf.H_norm2;
    inv.K = cf.K;
    inv.K_N = cf.K_N;
    inv.Delta = cf.Delta;
    const ReductionResult r = reduce_phi(q, scale);
    if (const auto* d = std::get_if<Diagonalizable>(&r)) {
        inv.a2 = d->a2;
        inv.b2 = d->b2;
        inv.alpha = d->alpha;
        inv.beta = d->beta;
    } else if (const auto* nd = std::get_if<NonDiagonalizable>(&r)) {
        inv.zeta = nd->zeta;
    }
    return inv;
}

// --- classification --------------------------------------------------------

const char* to_string(PointClassTag tag) {
    switch (tag) {
    case PointClassTag::Umbilic: return "umbilic";
    case PointClassTag::InflectionSpacelike: return "inflection_spacelike";
    case PointClassTag::InflectionTimelike: return "inflection_timelike";
    case PointClassTag::InflectionLightlike: return "inflection_lightlike";
    case PointClassTag::Regular: return "regular";
    case PointClassTag::SemiUmbilic: return "semi_umbilic";
    }
    return "?";
}

PointClass classify(const QuadraticMap& q, double scale) {
    // Phi = 0 means the curvature ellipse is a single point.
    if (phi_vanishes(q, scale)) return {PointClassTag::Umbilic, std::nullopt};
    const ClosedForm cf = closed_form(q);
    if (!is_negligible(cf.K_N, scale, 2)) return {PointClassTag::Regular, std::nullopt};
    if (!is_negligible(cf.Delta, scale, 4)) return {PointClassTag::SemiUmbilic, std::nullopt};
    const double t = cf.H_norm2 - cf.K;
    if (!is_negligible(t, scale, 2))
        return {t > 0 ? PointClassTag::InflectionSpacelike : PointClassTag::InflectionTimelike,
                std::nullopt};
    PointClass pc{PointClassTag::InflectionLightlike, std::nullopt};
    const ReductionResult r = reduce_phi(q, scale);
    if (const auto* nd = std::get_if<NonDiagonalizable>(&r)) pc.zeta = nd->zeta;
    return pc;
}

// --- group action ----------------------------------------------------------

QuadraticMap act(const QuadraticMap& q, double rapidity, double theta) {
    const Mat2 r = rotation(theta);
    const Mat2 rt = r.transpose();
    // The boost scales N1 by e^t and N2 by e^-t.
    const Mat2 q1 = rt * q.q1() * r * std::exp(rapidity);
    const Mat2 q2 = rt * q.q2() * r * std::exp(-rapidity);
    return QuadraticMap::from_components(q1, q2);
}

namespace {

bool close(double a, double b, double tol, double scale, int degree) {
    return is_negligible(a - b, scale, degree, tol);
}

} // namespace

bool equivalent(const QuadraticMap& qa, const QuadraticMap& qb, double tol) {
    const double sa = default_scale(qa);
    const double sb = default_scale(qb);
    const double s = std::max(sa, sb);
    if (s == 0.0) return true;

    const ReductionResult ra = reduce_phi(qa, s);
    const ReductionResult rb = reduce_phi(qb, s);
    if (ra.index() != rb.index()) return false;

    const InvariantSet ia = invariants(qa, s);
    const InvariantSet ib = invariants(qb, s);

    if (std::holds_alternative<NullPhi>(ra)) {
        const bool za = qa.max_abs() <= kClassTolerance * s;
        const bool zb = qb.max_abs() <= kClassTolerance * s;
        if (za || zb) return za == zb;
        return close(ia.H_norm2, ib.H_norm2, tol, s, 2);
    }
    if (std::holds_alternative<Diagonalizable>(ra)) {
        return close(ia.H_norm2, ib.H_norm2, tol, s, 2) && close(ia.K, ib.K, tol, s, 2) &&
               close(std::abs(ia.K_N), std::abs(ib.K_N), tol, s, 2) &&
               close(ia.Delta, ib.Delta, tol, s, 4);
    }
    const auto& na = std::get<NonDiagonalizable>(ra);
    const auto& nb = std::get<NonDiagonalizable>(rb);
    if (na.zeta.has_value() != nb.zeta.has_value()) return false;
    if (na.zeta) return close(std::abs(*na.zeta), std::abs(*nb.zeta), tol, s, 1);
    return close(ia.K, ib.K, tol, s, 2) && close(ia.Delta, ib.Delta, tol, s, 4);
}

// --- forms triple and reconstruction ---------------------------------------

FormTriple forms(const QuadraticMap& q) {
    const Mat2 mn = phi_null_matrix(q);
    // n = C c maps canonical to null coordinates.
    constexpr Mat2 c{kHalfSqrt2, kHalfSqrt2, -kHalfSqrt2, kHalfSqrt2};
    FormTriple t;
    t.L = Vec2L::from_null(q.h1(), q.h2());
    t.Phi = c.transpose() * mn * c;
    t.A = 0.5 * closed_form(q).K_N;
    return t;
}

namespace {

double quad(const Mat2& m, const Vec2L& a, const Vec2L& b) {
    return a.c1 * (m.m00 * b.c1 + m.m01 * b.c2) + a.c2 * (m.m10 * b.c1 + m.m11 * b.c2);
}

// Eigenvector of the 2x2 matrix m for eigenvalue lambda.
Vec2L eigenvector(const Mat2& m, double lambda) {
    const Vec2L v1{m.m01, lambda - m.m00};
    const Vec2L v2{lambda - m.m11, m.m10};
    const double n1 = v1.c1 * v1.c1 + v1.c2 * v1.c2;
    const double n2 = v2.c1 * v2.c1 + v2.c2 * v2.c2;
    return n1 >= n2 ? v1 : v2;
}

// A vector nu0 with Phi(nu0) = 1: u~1/a when a > 0, otherwise u~2/b, and
// the null direction carrying Phi in the non-diagonalizable case.
Vec2L unit_phi_vector(const Mat2& phi, double mag) {
    const Mat2 u{phi.m00, phi.m01, -phi.m10, -phi.m11}; // eta * Phi
    const double tr = u.trace();
    const double disc = tr * tr - 4 * u.det();
    if (disc > kClassTolerance * mag * mag) {
        const double root = std::sqrt(disc);
        const double lp = 0.5 * (tr + root);
        const double lm = 0.5 * (tr - root);
        const Vec2L v = lp > kClassTolerance * mag ? eigenvector(u, lp) : eigenvector(u, lm);
        return v / std::sqrt(quad(phi, v, v));
    }
    const auto [n1, n2] = null_basis();
    const double p1 = quad(phi, n1, n1);
    const double p2 = quad(phi, n2, n2);
    return p1 >= p2 ? n1 / std::sqrt(p1) : n2 / std::sqrt(p2);
}

} // namespace

QuadraticMap reconstruct(const Vec2L& L, const Mat2& Phi, double A) {
    const double mag = std::max({std::abs(Phi.m00), std::abs(Phi.m01), std::abs(Phi.m10),
                                 std::abs(Phi.m11), std::abs(A)});
    const double tol = kClassTolerance * std::max(mag, 1e-300);
    if (std::abs(Phi.m01 - Phi.m10) > tol) throw InvalidTriple("Phi matrix is not symmetric");
    const double tr = Phi.m00 + Phi.m11;
    const double det = Phi.det();
    const double min_eig = 0.5 * (tr - std::sqrt(std::max(0.0, tr * tr - 4 * det)));
    if (min_eig < -tol) throw InvalidTriple("Phi is not non-negative");
    if (std::abs(det - A * A) > kClassTolerance * std::max(mag * mag, 1e-300))
        throw InvalidTriple("Phi(n1)Phi(n2) - Phi~(n1,n2)^2 - A(n1,n2)^2 does not vanish");

    const auto [N1, N2] = null_basis();
    const auto shape = [&](const Vec2L& nu, const Vec2L& nu0, bool null_phi) {
        const double l = inner2(L, nu);
        Mat2 s{l, 0, 0, l};
        if (!null_phi) {
            const double a = quad(Phi, nu0, nu);
            const double b = A * mixed_product2(nu0, nu);
            // E1 = diag(1,-1); E2 enters with the sign that makes form_A return +A.
            s = s + Mat2{a, -b, -b, -a};
        }
        return s;
    };

    const bool null_phi = mag <= 1e-300 || std::abs(tr) <= tol;
    const Vec2L nu0 = null_phi ? Vec2L{} : unit_phi_vector(Phi, mag);
    const Mat2 s1 = shape(N1, nu0, null_phi);
    const Mat2 s2 = shape(N2, nu0, null_phi);
    // S_nu = -(nu2 q1 + nu1 q2) in null coordinates.
    return QuadraticMap::from_components(s2 * -1.0, s1 * -1.0);
}

} // namespace spacelike
