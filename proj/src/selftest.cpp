#include "spacelike/selftest.hpp"

#include "spacelike/ellipse.hpp"
#include "spacelike/errors.hpp"
#include "spacelike/fields.hpp"
#include "spacelike/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

namespace spacelike {

namespace {

constexpr double kPi = std::numbers::pi;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    Vec2L vec2() { return {uniform(-1, 1), uniform(-1, 1)}; }
    Vec4L vec4() { return {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)}; }
    QuadraticMap qmap() {
        return {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1),
                uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    }

private:
    std::mt19937_64 rng_;
};

// Runs check(sampler) n times; check returns a residual, NaN counts as failure.
SuiteResult run_suite(const std::string& name, int n, double tol, Sampler& s,
                      const std::function<double(Sampler&)>& check) {
    SuiteResult r{name, n, 0, 0, tol};
    for (int i = 0; i < n; ++i) {
        const double res = check(s);
        if (!(res <= tol)) ++r.failures;
        if (std::isnan(res)) r.max_residual = res;
        else if (!std::isnan(r.max_residual)) r.max_residual = std::max(r.max_residual, res);
    }
    return r;
}

double rel(double a, double b, double scale) { return std::abs(a - b) / std::max(1.0, scale); }

} // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
    Sampler s(opts.seed);
    const int n = opts.quick ? 100 : 1000;
    const int n_forms = opts.quick ? 100 : 10000;
    std::vector<SuiteResult> out;

    out.push_back(run_suite("lorentz.boost_isometry", n, 1e-12, s, [](Sampler& s) {
        const Vec2L a = s.vec2(), b = s.vec2();
        const Mat2 B = boost(s.uniform(-2, 2));
        return rel(inner2(B.apply(a), B.apply(b)), inner2(a, b), 1.0);
    }));

    out.push_back(run_suite("lorentz.cross4", n, 1e-12, s, [](Sampler& s) {
        const Vec4L a = s.vec4(), b = s.vec4(), c = s.vec4(), x = s.vec4();
        return std::abs(inner4(lorentz_cross4(a, b, c), x) - det4(x, a, b, c));
    }));

    out.push_back(run_suite("quadratic_maps.lagrange_identity", n_forms, 1e-10, s, [](Sampler& s) {
        const QuadraticMap q = s.qmap();
        const Vec2L n1 = s.vec2(), n2 = s.vec2();
        const double pt = form_Phi_polar(q, n1, n2), a = form_A(q, n1, n2);
        return std::abs(form_Phi(q, n1) * form_Phi(q, n2) - pt * pt - a * a);
    }));

    out.push_back(run_suite("quadratic_maps.phi_trace_det", n_forms, 1e-10, s, [](Sampler& s) {
        const QuadraticMap q = s.qmap();
        const InvariantSet inv = invariants(q);
        const Mat2 u = u_phi_null_matrix(q);
        return std::max(std::abs(u.trace() - (inv.H_norm2 - inv.K)),
                        std::abs(u.det() + 0.25 * inv.K_N * inv.K_N));
    }));

    out.push_back(run_suite("quadratic_maps.equivariance", n, 1e-8, s, [](Sampler& s) {
        const QuadraticMap q = s.qmap();
        const QuadraticMap g = act(q, s.uniform(-2, 2), s.uniform(-kPi, kPi));
        const InvariantSet a = invariants(q), b = invariants(g);
        const double sc = std::max(1.0, default_scale(q));
        double r = std::max({rel(a.H_norm2, b.H_norm2, sc * sc), rel(a.K, b.K, sc * sc),
                             rel(a.K_N, b.K_N, sc * sc), rel(a.Delta, b.Delta, std::pow(sc, 4))});
        if (!equivalent(q, g, 1e-8)) r = std::max(r, 1.0);
        return r;
    }));

    out.push_back(run_suite("quadratic_maps.reconstruction", n, 1e-9, s, [](Sampler& s) {
        const QuadraticMap q = s.qmap();
        const FormTriple f = forms(q);
        const QuadraticMap r = reconstruct(f.L, f.Phi, f.A);
        const InvariantSet a = invariants(q), b = invariants(r);
        return std::max({std::abs(a.H_norm2 - b.H_norm2), std::abs(a.K - b.K),
                         std::abs(a.K_N - b.K_N), std::abs(a.Delta - b.Delta)});
    }));

    out.push_back(run_suite("ellipse.intrinsic_equation", n, 1e-8, s, [](Sampler& s) {
        QuadraticMap q = s.qmap();
        while (std::abs(invariants(q).K_N) <= 0.1) q = s.qmap();
        double r = 0;
        for (int k = 0; k < 64; ++k) {
            const Vec2L p = ellipse_point(q, kPi * k / 64) - invariants(q).H;
            r = std::max(r, std::abs(phi_star(q, p) - 1.0));
        }
        return r;
    }));

    out.push_back(run_suite("ellipse.support_function", n, 1e-5, s, [](Sampler& s) {
        const QuadraticMap q = s.qmap();
        const Vec2L nu = s.vec2();
        const Vec2L H = invariants(q).H;
        double best = -1e300;
        constexpr int m = 20000;
        for (int k = 0; k < m; ++k) best = std::max(best, inner2(ellipse_point(q, kPi * k / m) - H, nu));
        return std::abs(best - support_function(q, nu));
    }));

    const std::vector<SurfaceChart> charts = {
        ellipsoid_in_hyperplane(3, 2, 1, {0.15}), torus_in_hyperplane(2, 0.7, {0.1}),
        hyperbolic_graph(0.4), graph4({0.3, -0.2, 0.7, 0.1, 0.2, -0.1, 0.3, 0.4, 0.9, -0.3, 0.5, 1.1})};
    const auto random_point = [&charts](Sampler& s) {
        const SurfaceChart& c = charts[static_cast<std::size_t>(s.uniform(0, 4)) % 4];
        return std::make_tuple(std::cref(c), s.uniform(c.domain.u0, c.domain.u1),
                               s.uniform(c.domain.v0, c.domain.v1));
    };

    out.push_back(run_suite("surface.frames", n, 1e-10, s, [&](Sampler& s) {
        const auto [c, u, v] = random_point(s);
        const AdaptedFrames f = adapted_frames(c(u, v));
        const ChartJet j = c(u, v);
        double r = std::max({std::abs(inner4(f.e1, f.e1) - 1), std::abs(inner4(f.e2, f.e2) - 1),
                             std::abs(inner4(f.e1, f.e2)), std::abs(inner4(f.N1, f.N1)),
                             std::abs(inner4(f.N2, f.N2)), std::abs(inner4(f.N1, f.N2) + 1),
                             std::abs(inner4(f.nt, f.nt) + 1), std::abs(inner4(f.ns, f.ns) - 1),
                             std::abs(inner4(f.ns, f.nt))});
        for (const Vec4L& nv : {f.N1, f.N2})
            for (const Vec4L& e : {f.e1, f.e2}) r = std::max(r, std::abs(inner4(nv, e)));
        const Vec4L lc = f.nt + f.ns;
        r = std::max({r, std::abs(inner4(lc, j.du)) / euclid_norm(j.du),
                      std::abs(inner4(lc, j.dv)) / euclid_norm(j.dv)});
        if (f.N1[3] <= 0 || f.N2[3] <= 0) r = 1;
        return r;
    }));

    const SurfaceChart h3 = hyperbolic_graph(0.4);
    out.push_back(run_suite("surface.hyperbolic_semi_umbilic", n, 1e-8, s, [&](Sampler& s) {
        const PointReport p = analyze_point(h3, s.uniform(-1, 1), s.uniform(-1, 1));
        return std::abs(p.invariants.K_N);
    }));

    out.push_back(run_suite("surface.sphere_invariants", n, 1e-9, s, [](Sampler& s) {
        const double radii[] = {0.5, 1.0, 2.0};
        const double r = radii[static_cast<int>(s.uniform(0, 3)) % 3];
        const SurfaceChart c = sphere_in_hyperplane(r);
        const QuadraticMap q = second_fundamental(c(s.uniform(-kPi, kPi), s.uniform(-1.2, 1.2)));
        const InvariantSet inv = invariants(q);
        const Mat2 phi = phi_null_matrix(q);
        return std::max({std::abs(phi.m00), std::abs(phi.m01), std::abs(phi.m11),
                         std::abs(inv.H_norm2 - 1 / (r * r)), std::abs(inv.K - 1 / (r * r)),
                         std::abs(inv.K_N), std::abs(inv.Delta)});
    }));

    const SurfaceChart ell = ellipsoid_in_hyperplane(3, 2, 1, {0.15});
    out.push_back(run_suite("fields.delta_spectrum_wong_bisection", n, 1e-6, s, [&](Sampler& s) {
        const PointGeometry pg = point_geometry(ell(s.uniform(-kPi, kPi), s.uniform(-1.1, 1.1)));
        const double sc = std::max(pg.II.max_abs(), ell.curvature_floor());
        const InvariantSet inv = invariants(pg.II, sc);
        const DirectionForms f = adapted_direction_forms(pg, inv, sc);
        const BDETriple& d = f.delta_tangent;
        double r = std::max(std::abs(std::abs(d.A + d.C) - std::abs(inv.K_N)),
                            std::abs(d.A * d.C - 0.25 * d.B * d.B + inv.Delta));
        const DirectionSet as = solve_directions(d);
        const DirectionSet ms = solve_directions(f.m_tangent);
        if (as.count == 2 && ms.count == 2) {
            const auto ang = [](const std::array<double, 2>& x) { return std::atan2(x[1], x[0]); };
            const double a1 = ang(as.dirs[0]), a2 = ang(as.dirs[1]);
            const double t = std::tan(a2 - a1);
            r = std::max(r, std::abs(t * t - 4 * inv.Delta / (inv.K_N * inv.K_N)) / (1 + t * t));
            for (int i = 0; i < 2; ++i) {
                const double m = ang(ms.dirs[i]);
                r = std::max(r, std::abs(std::abs(std::remainder(m - a1, kPi)) -
                                         std::abs(std::remainder(m - a2, kPi))));
            }
        }
        return r;
    }));

    out.push_back(run_suite("fields.principal_orthogonality", n, 1e-8, s, [&](Sampler& s) {
        const auto [c, u, v] = random_point(s);
        const BDECoeffs b = principal_bde(c, lightcone_field(c));
        const DirectionSet ds = solve_directions(b.coeff_at(u, v));
        if (ds.count < 2) return 0.0;
        const FirstFundamentalForm g = first_fundamental(c(u, v));
        const auto& x = ds.dirs[0];
        const auto& y = ds.dirs[1];
        const double gxy = g.E * x[0] * y[0] + g.F * (x[0] * y[1] + x[1] * y[0]) + g.G * x[1] * y[1];
        const double gxx = g.E * x[0] * x[0] + 2 * g.F * x[0] * x[1] + g.G * x[1] * x[1];
        const double gyy = g.E * y[0] * y[0] + 2 * g.F * y[0] * y[1] + g.G * y[1] * y[1];
        return std::abs(gxy) / std::sqrt(gxx * gyy);
    }));

    return out;
}

} // namespace spacelike
