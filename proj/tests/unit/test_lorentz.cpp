#include "oracles.hpp"

#include "spacelike/lorentz.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace spacelike;

namespace {

const Vec2L u1{1, 0}, u2{0, 1};

// Leibniz expansion over all 24 permutations.
double leibniz_det(const std::array<Vec4L, 4>& cols) {
    std::array<int, 4> p{0, 1, 2, 3};
    double total = 0;
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
        double term = inv % 2 ? -1 : 1;
        for (int i = 0; i < 4; ++i) term *= cols[i][p[i]];
        total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

Vec4L e(int i) {
    Vec4L v;
    v[i] = 1;
    return v;
}

} // namespace

TEST_CASE("inner2 examples") {
    const auto [N1, N2] = null_basis();
    CHECK(inner2(u1, u1) == 1);
    CHECK(inner2(N1, N2) == doctest::Approx(-1).epsilon(1e-15));
    CHECK(inner2(N1, N1) == doctest::Approx(0).epsilon(1e-15));
}

TEST_CASE("inner2 gram matrix and bilinearity") {
    CHECK(inner2(u1, u1) == 1);
    CHECK(inner2(u2, u2) == -1);
    CHECK(inner2(u1, u2) == 0);
    oracle::Rng r(7);
    for (int i = 0; i < 10000; ++i) {
        const Vec2L a = r.vec2(), b = r.vec2(), c = r.vec2();
        const double s = r();
        CHECK(std::abs(inner2(a, b) - inner2(b, a)) <= 1e-15);
        CHECK(std::abs(inner2(a * s + c, b) - (s * inner2(a, b) + inner2(c, b))) <= 1e-14);
    }
}

TEST_CASE("null basis") {
    const auto [N1, N2] = null_basis();
    CHECK(N1.c1 == doctest::Approx(std::sqrt(2) / 2));
    CHECK(N1.c2 == doctest::Approx(std::sqrt(2) / 2));
    CHECK(N2.c1 == doctest::Approx(-std::sqrt(2) / 2));
    CHECK(N2.c2 == doctest::Approx(std::sqrt(2) / 2));
    CHECK(N1.c1 * N2.c2 - N1.c2 * N2.c1 == doctest::Approx(1));
    CHECK(N1.c2 > 0);
    CHECK(N2.c2 > 0);
}

TEST_CASE("null coordinates round trip") {
    oracle::Rng r(11);
    for (int i = 0; i < 1000; ++i) {
        const Vec2L v = r.vec2();
        const auto n = v.null_coords();
        const Vec2L w = Vec2L::from_null(n[0], n[1]);
        CHECK(std::abs(w.c1 - v.c1) <= 1e-15);
        CHECK(std::abs(w.c2 - v.c2) <= 1e-15);
        CHECK(std::abs(inner2(v, v) + 2 * n[0] * n[1]) <= 1e-14);
    }
}

TEST_CASE("boost") {
    const Mat2 id = boost(0);
    CHECK(id == Mat2::identity());
    oracle::Rng r(3);
    const auto [N1, N2] = null_basis();
    for (int i = 0; i < 1000; ++i) {
        const double s = r(-3, 3), t = r(-3, 3);
        const Vec2L a = r.vec2(), b = r.vec2();
        const Mat2 B = boost(t);
        CHECK(std::abs(inner2(B.apply(a), B.apply(b)) - inner2(a, b)) <= 1e-11 * std::cosh(2 * t));
        CHECK(B.det() == doctest::Approx(1));
        const Mat2 c = boost(s) * boost(t), d = boost(s + t);
        const double tol = 1e-12 * std::max(1.0, std::cosh(s + t));
        CHECK(std::abs(c.m00 - d.m00) <= tol);
        CHECK(std::abs(c.m01 - d.m01) <= tol);
        CHECK(std::abs(c.m10 - d.m10) <= tol);
        CHECK(std::abs(c.m11 - d.m11) <= tol);
        const Vec2L bn = B.apply(N1);
        CHECK(bn.c1 == doctest::Approx(std::exp(t) * N1.c1).epsilon(1e-12));
        CHECK(bn.c2 == doctest::Approx(std::exp(t) * N1.c2).epsilon(1e-12));
        CHECK(B.apply(u2).c2 > 0);
    }
}

TEST_CASE("rotation") {
    CHECK(rotation(0) == Mat2::identity());
    const auto e2 = rotation(M_PI / 2).apply(std::array<double, 2>{1, 0});
    CHECK(std::abs(e2[0]) <= 1e-15);
    CHECK(e2[1] == doctest::Approx(1));
    oracle::Rng r(5);
    for (int i = 0; i < 100; ++i) {
        const double th = r(-4, 4);
        const Mat2 p = rotation(th) * rotation(-th);
        CHECK(std::abs(p.m00 - 1) <= 1e-15);
        CHECK(std::abs(p.m01) <= 1e-15);
        CHECK(std::abs(p.m11 - 1) <= 1e-15);
        CHECK(rotation(th).det() == doctest::Approx(1));
    }
}

TEST_CASE("mixed product") {
    const auto [N1, N2] = null_basis();
    CHECK(mixed_product2(u1, u2) == 1);
    CHECK(mixed_product2(N1, N2) == doctest::Approx(1));
    const Vec2L a{0.3, -2.1};
    CHECK(mixed_product2(a, a) == 0);
}

TEST_CASE("causal character") {
    const auto [N1, N2] = null_basis();
    CHECK(causal_character(N1, 1.0) == CausalCharacter::Lightlike);
    CHECK(causal_character(u1, 1.0) == CausalCharacter::Spacelike);
    CHECK(causal_character(u2, 1.0) == CausalCharacter::Timelike);
    CHECK(causal_character(Vec2L{0, 0}, 1.0) == CausalCharacter::Zero);
    CHECK(causal_character(Vec4L{0, 0, 1, 1}, 1.0) == CausalCharacter::Lightlike);
    CHECK(causal_character(Vec4L{0, 0, 0, 2}, 1.0) == CausalCharacter::Timelike);
}

TEST_CASE("det4 matches permutation expansion") {
    oracle::Rng r(13);
    for (int i = 0; i < 200; ++i) {
        std::array<Vec4L, 4> c;
        for (auto& v : c) v = {r(), r(), r(), r()};
        CHECK(std::abs(det4(c[0], c[1], c[2], c[3]) - leibniz_det(c)) <= 1e-13);
    }
}

TEST_CASE("lorentz_cross4 defining identity") {
    oracle::Rng r(17);
    for (int i = 0; i < 1000; ++i) {
        const Vec4L a{r(), r(), r(), r()}, b{r(), r(), r(), r()}, c{r(), r(), r(), r()};
        const Vec4L w = lorentz_cross4(a, b, c);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(inner4(w, e(k)) - leibniz_det({e(k), a, b, c})) <= 1e-13);
        const double mag = euclid_norm(a) * euclid_norm(b) * euclid_norm(c);
        CHECK(std::abs(inner4(w, a)) <= 1e-10 * mag);
        CHECK(std::abs(inner4(w, b)) <= 1e-10 * mag);
        CHECK(std::abs(inner4(w, c)) <= 1e-10 * mag);
    }
}

TEST_CASE("lorentz_cross4 examples") {
    // inner4(w, e4) = det(e4, e1, e2, e3) = -1 and <e4, e4> = -1, so w = +e4.
    const Vec4L w = lorentz_cross4(e(0), e(1), e(2));
    CHECK(inner4(w, w) == doctest::Approx(-1));
    CHECK(std::abs(w[0]) + std::abs(w[1]) + std::abs(w[2]) == 0);
    CHECK(w[3] == doctest::Approx(1));
    const Vec4L z = lorentz_cross4(e(0), e(1), e(3));
    CHECK(std::abs(z[2]) == doctest::Approx(1));
    CHECK(std::abs(z[0]) + std::abs(z[1]) + std::abs(z[3]) == 0);
    const Vec4L a{1, 2, 3, 4}, c{-1, 0.5, 2, 0};
    const Vec4L zero = lorentz_cross4(a, a, c);
    CHECK(euclid_norm(zero) == 0);
}
