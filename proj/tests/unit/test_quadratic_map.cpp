#include "oracles.hpp"

#include "spacelike/ellipse.hpp"
#include "spacelike/errors.hpp"
#include "spacelike/quadratic_map.hpp"

#include <doctest.h>

using namespace spacelike;

namespace {

const QuadraticMap q_reg{1, -1, 0, 0, 0, 1};
const QuadraticMap q_semi{2, 0, 0, 1, 1, 0};
const NullBasis NB = null_basis();

bool mat_close(const Mat2& a, const Mat2& b, double tol) {
    return std::abs(a.m00 - b.m00) <= tol && std::abs(a.m01 - b.m01) <= tol &&
           std::abs(a.m10 - b.m10) <= tol && std::abs(a.m11 - b.m11) <= tol;
}

bool vec_close(const Vec2L& a, const Vec2L& b, double tol) {
    return std::abs(a.c1 - b.c1) <= tol && std::abs(a.c2 - b.c2) <= tol;
}

// q2 = lambda q1 + h I keeps K_N = 0 (segment-type ellipses).
QuadraticMap parallel_map(oracle::Rng& r) {
    const double x = r(), y = r(), z = r(), lam = r(), h = r();
    return {x, y, z, lam * x + h, lam * y + h, lam * z};
}

} // namespace

TEST_CASE("shape operator examples") {
    CHECK(shape_operator(QuadraticMap{}, Vec2L{0.3, 0.9}) == Mat2{});
    CHECK(mat_close(shape_operator(q_reg, NB.n1), Mat2{0, -1, -1, 0}, 1e-15));
    CHECK(mat_close(shape_operator(q_reg, NB.n2), Mat2{-1, 0, 0, 1}, 1e-15));
}

TEST_CASE("shape operator against polarization") {
    oracle::Rng r(21);
    for (int i = 0; i < 2000; ++i) {
        const QuadraticMap q = r.qmap();
        const Vec2L nu = r.vec2();
        CHECK(mat_close(shape_operator(q, nu), oracle::shape(q, nu), 1e-14));
    }
}

TEST_CASE("forms examples") {
    for (const Vec2L& n : {NB.n1, NB.n2, Vec2L{0.2, -0.7}}) {
        CHECK(form_L(QuadraticMap{}, n) == 0);
        CHECK(form_Q(QuadraticMap{}, n) == 0);
        CHECK(form_Phi(QuadraticMap{}, n) == 0);
        CHECK(form_A(QuadraticMap{}, n, NB.n2) == 0);
    }
    CHECK(form_Phi(q_reg, NB.n1) == doctest::Approx(1));
    CHECK(form_Phi(q_reg, NB.n2) == doctest::Approx(1));
    CHECK(form_A(q_reg, NB.n1, NB.n2) == doctest::Approx(1));
}

TEST_CASE("forms against shape operator oracle") {
    oracle::Rng r(23);
    for (int i = 0; i < 2000; ++i) {
        const QuadraticMap q = r.qmap();
        const Vec2L a = r.vec2(), b = r.vec2();
        const Mat2 sa = oracle::shape(q, a), sb = oracle::shape(q, b);
        CHECK(form_L(q, a) == doctest::Approx(0.5 * sa.trace()).epsilon(1e-12));
        CHECK(std::abs(form_Q(q, a) - sa.det()) <= 1e-14);
        const Mat2 c = sa * sb - sb * sa;
        CHECK(std::abs(form_A(q, a, b) - 0.5 * c.m10) <= 1e-14);
        CHECK(std::abs(form_Phi(q, a) - oracle::phi(q, a)) <= 1e-14);
    }
}

TEST_CASE("Lagrange identity and non-negativity of Phi") {
    oracle::Rng r(29);
    double worst = 0, low = 0;
    for (int i = 0; i < 10000; ++i) {
        const QuadraticMap q = r.qmap();
        const Vec2L a = r.vec2(), b = r.vec2();
        const double pt = form_Phi_polar(q, a, b), A = form_A(q, a, b);
        worst = std::max(worst, std::abs(form_Phi(q, a) * form_Phi(q, b) - pt * pt - A * A));
        low = std::min(low, form_Phi(q, a));
    }
    CHECK(worst <= 1e-10);
    CHECK(low >= -1e-12);
}

TEST_CASE("trace and determinant of u_Phi") {
    oracle::Rng r(31);
    for (int i = 0; i < 10000; ++i) {
        const QuadraticMap q = r.qmap();
        const oracle::Inv o = oracle::invariants(q);
        const Mat2 u = oracle::u_phi(q);
        REQUIRE(std::abs(u.trace() - (o.H2 - o.K)) <= 1e-10);
        REQUIRE(std::abs(u.det() + 0.25 * o.KN * o.KN) <= 1e-10);
    }
}

TEST_CASE("invariants examples") {
    const InvariantSet a = invariants(q_reg);
    CHECK(std::abs(a.H.c1) + std::abs(a.H.c2) == 0);
    CHECK(a.H_norm2 == 0);
    CHECK(a.K == doctest::Approx(0));
    CHECK(a.K_N == doctest::Approx(2));
    CHECK(a.Delta == doctest::Approx(-1));
    REQUIRE(a.a2);
    CHECK(*a.a2 == doctest::Approx(1));
    CHECK(*a.b2 == doctest::Approx(1));
    CHECK(std::abs(*a.alpha) <= 1e-15);
    CHECK(std::abs(*a.beta) <= 1e-15);

    const InvariantSet b = invariants(q_semi);
    CHECK(vec_close(b.H, NB.n1 + NB.n2, 1e-15));
    CHECK(b.H_norm2 == doctest::Approx(-2));
    CHECK(b.K == doctest::Approx(-2));
    CHECK(b.K_N == 0);
    CHECK(b.Delta == doctest::Approx(1));

    const InvariantSet z = invariants(QuadraticMap{});
    CHECK(z.H_norm2 == 0);
    CHECK(z.K == 0);
    CHECK(z.K_N == 0);
    CHECK(z.Delta == 0);
}

TEST_CASE("invariants against oracle") {
    oracle::Rng r(37);
    for (int i = 0; i < 5000; ++i) {
        const QuadraticMap q = r.qmap();
        const InvariantSet a = invariants(q);
        const oracle::Inv o = oracle::invariants(q);
        REQUIRE(vec_close(a.H, o.H, 1e-14));
        REQUIRE(std::abs(a.H_norm2 - o.H2) <= 1e-13);
        REQUIRE(std::abs(a.K - o.K) <= 1e-13);
        REQUIRE(std::abs(a.K_N - o.KN) <= 1e-13);
        REQUIRE(std::abs(a.Delta - o.Delta) <= 1e-13);
        if (a.a2) {
            CHECK(*a.a2 >= 0);
            CHECK(*a.b2 >= 0);
            CHECK(std::abs(*a.a2 * *a.b2 - 0.25 * o.KN * o.KN) <= 1e-12);
            CHECK(std::abs(*a.a2 - *a.b2 - (o.H2 - o.K)) <= 1e-12);
        }
    }
}

TEST_CASE("reduce_phi examples") {
    const ReductionResult a = reduce_phi(q_reg);
    REQUIRE(std::holds_alternative<Diagonalizable>(a));
    const auto& d = std::get<Diagonalizable>(a);
    CHECK(d.a2 == doctest::Approx(1));
    CHECK(d.b2 == doctest::Approx(1));
    CHECK(vec_close(d.frame.f1, Vec2L{1, 0}, 1e-14));
    CHECK(vec_close(d.frame.f2, Vec2L{0, 1}, 1e-14));
    CHECK(std::abs(d.alpha) <= 1e-15);
    CHECK(std::abs(d.beta) <= 1e-15);

    const ReductionResult b = reduce_phi(q_semi);
    REQUIRE(std::holds_alternative<NonDiagonalizable>(b));
    const auto& n = std::get<NonDiagonalizable>(b);
    CHECK(n.matrix_case == MatrixCase::A2);
    CHECK(vec_close(n.null_frame.n1, NB.n1, 1e-14));
    CHECK(vec_close(n.null_frame.n2, NB.n2, 1e-14));
    CHECK(n.h_tilde[0] == doctest::Approx(1));
    CHECK(n.h_tilde[1] == doctest::Approx(1));
    // Delta = [H, xi]^2 with xi = N1 the segment half-vector.
    const double m = mixed_product2(invariants(q_semi).H, NB.n1);
    CHECK(m * m == doctest::Approx(invariants(q_semi).Delta));

    CHECK(std::holds_alternative<NullPhi>(reduce_phi(QuadraticMap{})));
}

TEST_CASE("diagonalizable reduction properties") {
    oracle::Rng r(41);
    int n_diag = 0;
    for (int i = 0; i < 3000; ++i) {
        const QuadraticMap q = r.qmap();
        const ReductionResult red = reduce_phi(q);
        if (!std::holds_alternative<Diagonalizable>(red)) continue;
        ++n_diag;
        const auto& d = std::get<Diagonalizable>(red);
        const Mat2 u = oracle::u_phi(q);
        const oracle::Inv o = oracle::invariants(q);
        const Frame2L& f = d.frame;
        CHECK(std::abs(inner2(f.f1, f.f1) - 1) <= 1e-12);
        CHECK(std::abs(inner2(f.f2, f.f2) + 1) <= 1e-12);
        CHECK(std::abs(inner2(f.f1, f.f2)) <= 1e-12);
        CHECK(mixed_product2(f.f1, f.f2) > 0);
        CHECK(f.f2.c2 > 0);
        CHECK(vec_close(u.apply(f.f1), f.f1 * d.a2, 1e-10));
        CHECK(vec_close(u.apply(f.f2), f.f2 * -d.b2, 1e-10));
        CHECK(vec_close(f.f1 * d.alpha + f.f2 * d.beta, o.H, 1e-12));
        const double root = std::sqrt(o.KN * o.KN + (o.H2 - o.K) * (o.H2 - o.K));
        CHECK(std::abs(d.alpha * d.alpha * root - (o.Delta + d.a2 * o.H2 + 0.25 * o.KN * o.KN)) <= 1e-9);
        CHECK(std::abs(d.beta * d.beta * root - (o.Delta - d.b2 * o.H2 + 0.25 * o.KN * o.KN)) <= 1e-9);
    }
    CHECK(n_diag > 2900);
}

TEST_CASE("non-diagonalizable reduction properties") {
    oracle::Rng r(43);
    for (int i = 0; i < 500; ++i) {
        const double x = r(), y = r(), z = r(), h = r();
        const QuadraticMap q0{x, y, z, h, h, 0};
        const QuadraticMap q = act(q0, r(-1.5, 1.5), r(-3, 3));
        const ReductionResult red = reduce_phi(q);
        REQUIRE(std::holds_alternative<NonDiagonalizable>(red));
        const auto& n = std::get<NonDiagonalizable>(red);
        const Vec2L a = n.null_frame.n1, b = n.null_frame.n2;
        CHECK(std::abs(inner2(a, a)) <= 1e-10);
        CHECK(std::abs(inner2(b, b)) <= 1e-10);
        CHECK(std::abs(inner2(a, b) + 1) <= 1e-10);
        CHECK(a.c2 > 0);
        CHECK(b.c2 > 0);
        CHECK(mixed_product2(a, b) > 0);
        // matrix of u_Phi in (N~1, N~2)
        const Mat2 P{a.c1, b.c1, a.c2, b.c2};
        const double det = P.det();
        const Mat2 Pinv{P.m11 / det, -P.m01 / det, -P.m10 / det, P.m00 / det};
        const Mat2 M = Pinv * oracle::u_phi(q) * P;
        const Mat2 want = n.matrix_case == MatrixCase::A1 ? Mat2{0, 0, -1, 0} : Mat2{0, -1, 0, 0};
        CHECK(mat_close(M, want, 1e-8));
        const oracle::Inv o = oracle::invariants(q);
        const Vec2L Hn = a * n.h_tilde[0] + b * n.h_tilde[1];
        CHECK(vec_close(Hn, o.H, 1e-9));
        // A2 swaps the roles of the two coordinates
        const double hd = n.matrix_case == MatrixCase::A1 ? n.h_tilde[0] : n.h_tilde[1];
        CHECK(std::abs(hd * hd - o.Delta) <= 1e-9);
    }
}

TEST_CASE("classify") {
    CHECK(classify(q_reg, 1).tag == PointClassTag::Regular);
    CHECK(classify(q_semi, 2).tag == PointClassTag::SemiUmbilic);
    CHECK(classify(QuadraticMap{}, 1).tag == PointClassTag::Umbilic);
    // rank one: q(X) = X1^2 * n
    CHECK(classify(QuadraticMap{1, 0, 0, 1, 0, 0}, 1).tag == PointClassTag::InflectionTimelike);
    CHECK(classify(QuadraticMap{1, 0, 0, -1, 0, 0}, 1).tag == PointClassTag::InflectionSpacelike);
    const PointClass l = classify(QuadraticMap{1, 0, 0, 0, 0, 0}, 1);
    CHECK(l.tag == PointClassTag::InflectionLightlike);
    CHECK(l.zeta.has_value());
}

TEST_CASE("act") {
    oracle::Rng r(47);
    for (int i = 0; i < 1000; ++i) {
        const QuadraticMap q = r.qmap();
        CHECK(act(q, 0, 0) == q);
        const double t = r(-2, 2), th = r(-3.2, 3.2);
        const QuadraticMap g = act(q, t, th);
        const oracle::Inv a = oracle::invariants(q), b = oracle::invariants(g);
        const double s = std::cosh(2 * t);
        CHECK(std::abs(a.H2 - b.H2) <= 1e-8 * s);
        CHECK(std::abs(a.K - b.K) <= 1e-8 * s);
        CHECK(std::abs(a.KN - b.KN) <= 1e-8 * s);
        CHECK(std::abs(a.Delta - b.Delta) <= 1e-8 * s * s);
        CHECK(vec_close(b.H, boost(t).apply(a.H), 1e-12 * s));
        // pointwise: act(q)(X) = B q(R X)
        const double X1 = r(), X2 = r();
        const auto RX = rotation(th).apply(std::array<double, 2>{X1, X2});
        CHECK(vec_close(g(X1, X2), boost(t).apply(q(RX[0], RX[1])), 1e-12 * s));
    }
}

TEST_CASE("equivalent") {
    oracle::Rng r(53);
    for (int i = 0; i < 500; ++i) {
        const QuadraticMap q = r.qmap();
        CHECK(equivalent(q, act(q, r(-2, 2), r(-3, 3)), 1e-8));
        CHECK_FALSE(equivalent(q, q * 2, 1e-8));
    }
    CHECK(equivalent(QuadraticMap{}, QuadraticMap{}, 1e-8));
    CHECK_FALSE(equivalent(q_reg, q_semi, 1e-8));
}

TEST_CASE("reconstruct") {
    const QuadraticMap z = reconstruct(Vec2L{0, 0}, Mat2{}, 0);
    CHECK(z.max_abs() == 0);
    oracle::Rng r(59);
    for (int i = 0; i < 1000; ++i) {
        const QuadraticMap q = r.qmap();
        const FormTriple f = forms(q);
        const QuadraticMap p = reconstruct(f.L, f.Phi, f.A);
        CHECK(equivalent(q, p, 1e-8));
        const oracle::Inv a = oracle::invariants(q), b = oracle::invariants(p);
        CHECK(std::abs(a.H2 - b.H2) <= 1e-9);
        CHECK(std::abs(a.K - b.K) <= 1e-9);
        CHECK(std::abs(a.KN - b.KN) <= 1e-9);
        CHECK(std::abs(a.Delta - b.Delta) <= 1e-9);
    }
    const FormTriple f = forms(q_reg);
    CHECK_THROWS_AS(reconstruct(f.L, f.Phi, f.A + 0.1), InvalidTriple);
    CHECK_THROWS_AS(reconstruct(Vec2L{}, Mat2{-1, 0, 0, 0}, 0), InvalidTriple);
}

TEST_CASE("reconstruct handles segment maps") {
    oracle::Rng r(61);
    for (int i = 0; i < 200; ++i) {
        const QuadraticMap q = parallel_map(r);
        const FormTriple f = forms(q);
        CHECK(equivalent(q, reconstruct(f.L, f.Phi, f.A), 1e-8));
    }
}

TEST_CASE("semi-umbilic identity") {
    oracle::Rng r(67);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        const QuadraticMap q = parallel_map(r);
        const EllipseData e = ellipse_data(q, default_scale(q));
        if (!std::holds_alternative<EllipseSegment>(e.shape)) continue;
        ++checked;
        const Vec2L xi = std::get<EllipseSegment>(e.shape).xi;
        const double m = mixed_product2(oracle::invariants(q).H, xi);
        CHECK(std::abs(oracle::invariants(q).Delta - m * m) <= 1e-9);
    }
    CHECK(checked > 450);
}
