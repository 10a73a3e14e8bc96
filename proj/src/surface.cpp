#include "spacelike/surface.hpp"

#include "spacelike/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace spacelike {

FirstFundamentalForm first_fundamental(const ChartJet& jet) {
    FirstFundamentalForm f{inner4(jet.du, jet.du), inner4(jet.du, jet.dv), inner4(jet.dv, jet.dv)};
    const double nu = euclid_norm(jet.du);
    const double nv = euclid_norm(jet.dv);
    constexpr double tol = 1e-12;
    if (f.E <= tol * nu * nu) throw NotSpacelike("E <= 0");
    if (f.E * f.G - f.F * f.F <= tol * nu * nu * nv * nv) throw NotSpacelike("EG - F^2 <= 0");
    return f;
}

AdaptedFrames adapted_frames(const ChartJet& jet) {
    const FirstFundamentalForm fff = first_fundamental(jet);
    AdaptedFrames fr;
    const double se = std::sqrt(fff.E);
    const double d = std::sqrt(fff.G - fff.F * fff.F / fff.E);
    fr.to_orthonormal = {1.0 / se, -fff.F / (fff.E * d), 0.0, 1.0 / d};
    fr.e1 = jet.du / se;
    fr.e2 = (jet.dv - fr.e1 * (fff.F / se)) / d;

    // Project e4 onto the normal plane; the result is timelike and future-directed.
    const Vec4L e4{0, 0, 0, 1};
    Vec4L t = e4 - fr.e1 * inner4(e4, fr.e1) - fr.e2 * inner4(e4, fr.e2);
    t = t / std::sqrt(-inner4(t, t));
    if (t[3] < 0) t = -t;
    fr.nt = t;

    Vec4L s = lorentz_cross4(fr.e1, fr.e2, fr.nt);
    s = s / std::sqrt(inner4(s, s));
    if (det4(fr.e1, fr.e2, s, fr.nt) < 0) s = -s;
    fr.ns = s;

    fr.N1 = (fr.ns + fr.nt) * kHalfSqrt2;
    fr.N2 = (fr.nt - fr.ns) * kHalfSqrt2;
    return fr;
}

namespace {

Mat2 congruence(const Mat2& t, const Mat2& m) { return t.transpose() * m * t; }

} // namespace

QuadraticMap second_fundamental(const ChartJet& jet, const AdaptedFrames& fr) {
    // N1 coefficient of a normal vector n is -<n, N2>, N2 coefficient is -<n, N1>.
    const auto c1 = [&](const Vec4L& n) { return -inner4(n, fr.N2); };
    const auto c2 = [&](const Vec4L& n) { return -inner4(n, fr.N1); };
    const Mat2 a1{c1(jet.duu), c1(jet.duv), c1(jet.duv), c1(jet.dvv)};
    const Mat2 a2{c2(jet.duu), c2(jet.duv), c2(jet.duv), c2(jet.dvv)};
    return QuadraticMap::from_components(congruence(fr.to_orthonormal, a1),
                                         congruence(fr.to_orthonormal, a2));
}

QuadraticMap second_fundamental(const ChartJet& jet) {
    return second_fundamental(jet, adapted_frames(jet));
}

PointGeometry point_geometry(const ChartJet& jet) {
    PointGeometry pg;
    pg.fff = first_fundamental(jet);
    pg.frames = adapted_frames(jet);
    pg.II = second_fundamental(jet, pg.frames);
    return pg;
}

Vec4L lightcone_normal(const PointGeometry& pg) { return pg.frames.nt + pg.frames.ns; }

NuFormCoeffs nu_form_coeffs(const ChartJet& jet, const Vec4L& nu) {
    const double nn = euclid_norm(nu);
    constexpr double tol = 1e-8;
    if (std::abs(inner4(nu, jet.du)) > tol * nn * euclid_norm(jet.du))
        throw NotNormal("<nu, phi_u> != 0");
    if (std::abs(inner4(nu, jet.dv)) > tol * nn * euclid_norm(jet.dv))
        throw NotNormal("<nu, phi_v> != 0");
    return {inner4(jet.duu, nu), inner4(jet.duv, nu), inner4(jet.dvv, nu)};
}

Mat2 nu_shape_matrix(const AdaptedFrames& frames, const NuFormCoeffs& c) {
    return congruence(frames.to_orthonormal, Mat2{c.e, c.f, c.f, c.g});
}

PointReport analyze_point(const SurfaceChart& chart, double u, double v) {
    PointReport r;
    r.geometry = point_geometry(chart(u, v));
    r.scale = std::max(r.geometry.II.max_abs(), chart.curvature_floor());
    r.invariants = invariants(r.geometry.II, r.scale);
    r.point_class = classify(r.geometry.II, r.scale);
    r.ellipse = ellipse_data(r.geometry.II, r.scale);
    return r;
}

NormalField lightcone_field(const SurfaceChart& chart) {
    return [chart](double u, double v) {
        const AdaptedFrames fr = adapted_frames(chart(u, v));
        return fr.nt + fr.ns;
    };
}

SurfaceChart finite_difference_adapter(std::string name, Domain domain,
                                       std::function<Vec4L(double, double)> point_fn,
                                       std::optional<double> h) {
    const double step = h.value_or(1e-5 * domain.diameter());
    SurfaceChart c;
    c.name = std::move(name);
    c.domain = domain;
    c.analytic = false;
    c.fd_step = step;
    c.jet_at = [fn = std::move(point_fn), step](double u, double v) {
        const Vec4L f0 = fn(u, v);
        const Vec4L fpu = fn(u + step, v), fmu = fn(u - step, v);
        const Vec4L fpv = fn(u, v + step), fmv = fn(u, v - step);
        const Vec4L fpp = fn(u + step, v + step), fpm = fn(u + step, v - step);
        const Vec4L fmp = fn(u - step, v + step), fmm = fn(u - step, v - step);
        const double h2 = step * step;
        ChartJet j;
        j.p = f0;
        j.du = (fpu - fmu) / (2 * step);
        j.dv = (fpv - fmv) / (2 * step);
        j.duu = (fpu - f0 * 2.0 + fmu) / h2;
        j.dvv = (fpv - f0 * 2.0 + fmv) / h2;
        j.duv = (fpp - fpm - fmp + fmm) / (4 * h2);
        return j;
    };
    return c;
}

} // namespace spacelike
