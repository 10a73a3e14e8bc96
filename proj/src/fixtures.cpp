#include "spacelike/fixtures.hpp"

#include "spacelike/jet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace spacelike {

namespace {

using JetPoint = std::array<Jet, 4>;

template <class F>
SurfaceChart analytic_chart(std::string name, Domain domain, F f) {
    SurfaceChart c;
    c.name = std::move(name);
    c.domain = domain;
    c.analytic = true;
    c.jet_at = [f](double u, double v) {
        const JetPoint r = f(Jet::var_u(u), Jet::var_v(v));
        ChartJet j;
        for (int i = 0; i < 4; ++i) {
            j.p[i] = r[i].f;
            j.du[i] = r[i].fu;
            j.dv[i] = r[i].fv;
            j.duu[i] = r[i].fuu;
            j.duv[i] = r[i].fuv;
            j.dvv[i] = r[i].fvv;
        }
        return j;
    };
    return c;
}

template <class F>
std::function<Vec4L(double, double)> point_function(F f) {
    return [f](double u, double v) {
        const JetPoint r = f(Jet(u), Jet(v));
        return Vec4L{r[0].f, r[1].f, r[2].f, r[3].f};
    };
}

auto graph4_fn(const Graph4Params& p) {
    return [p](const Jet& u, const Jet& v) {
        const Jet A = 0.5 * (p.a20 * u * u + 2 * p.a11 * u * v + p.a02 * v * v) +
                      (p.a30 * u * u * u + 3 * p.a21 * u * u * v + 3 * p.a12 * u * v * v +
                       p.a03 * v * v * v) / 6.0;
        const Jet B = 0.5 * p.k * (u * u + v * v) +
                      (p.b30 * u * u * u + 3 * p.b21 * u * u * v + 3 * p.b12 * u * v * v +
                       p.b03 * v * v * v) / 6.0;
        return JetPoint{u, v, kHalfSqrt2 * (A - B), kHalfSqrt2 * (A + B)};
    };
}

// Smooth ambient function used to lift closed fixtures off {x4 = 0}.
Jet lift(const Jet& x1, const Jet& x2, const Jet& x3) { return x1 * x2 + x2 * x3 + 0.3 * x1; }

auto ellipsoid_cap_fn(double a1, double a2, double a3, Perturbation pert, bool north) {
    return [=](const Jet& s, const Jet& t) {
        const Jet x1 = a1 * s;
        const Jet x2 = north ? a2 * t : -a2 * t;
        const Jet h = sqrt(1.0 - s * s - t * t);
        const Jet x3 = north ? a3 * h : -a3 * h;
        return JetPoint{x1, x2, x3, pert.eps * lift(x1, x2, x3)};
    };
}

} // namespace

SurfaceChart graph4(const Graph4Params& p, Domain domain) {
    return analytic_chart("graph4", domain, graph4_fn(p));
}

std::function<Vec4L(double, double)> graph4_point(const Graph4Params& p) {
    return point_function(graph4_fn(p));
}

SurfaceChart plane() {
    return analytic_chart("plane", {-1, 1, -1, 1}, [](const Jet& u, const Jet& v) {
        return JetPoint{u, v, Jet(0.0), Jet(0.0)};
    });
}

SurfaceChart sphere_in_hyperplane(double r) {
    return ellipsoid_in_hyperplane(r, r, r);
}

SurfaceChart ellipsoid_in_hyperplane(double a1, double a2, double a3, Perturbation pert,
                                     double vmax) {
    constexpr double pi = std::numbers::pi;
    SurfaceChart c = analytic_chart(
        a1 == a2 && a2 == a3 ? "sphere" : "ellipsoid", {-pi, pi, -vmax, vmax},
        [=](const Jet& u, const Jet& v) {
            const Jet cv = cos(v);
            const Jet x1 = a1 * cv * cos(u);
            const Jet x2 = a2 * cv * sin(u);
            const Jet x3 = a3 * sin(v);
            return JetPoint{x1, x2, x3, pert.eps * lift(x1, x2, x3)};
        });
    c.periodic_u = true;
    return c;
}

SurfaceChart torus_in_hyperplane(double R, double r, Perturbation pert) {
    constexpr double pi = std::numbers::pi;
    SurfaceChart c =
        analytic_chart("torus", {0, 2 * pi, 0, 2 * pi}, [=](const Jet& u, const Jet& v) {
            const Jet rho = R + r * cos(v);
            const Jet x1 = rho * cos(u);
            const Jet x2 = rho * sin(u);
            const Jet x3 = r * sin(v);
            return JetPoint{x1, x2, x3, pert.eps * lift(x1, x2, x3)};
        });
    c.periodic_u = true;
    c.periodic_v = true;
    return c;
}

SurfaceChart hyperbolic_graph(double amp, Domain domain) {
    return analytic_chart("hyperbolic_graph", domain, [amp](const Jet& u, const Jet& v) {
        const Jet h = amp * (sin(1.3 * u) * cos(0.7 * v) + 0.5 * u * v);
        return JetPoint{u, v, h, sqrt(1.0 + u * u + v * v + h * h)};
    });
}

SurfaceChart rotate_parameters(const SurfaceChart& chart, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    SurfaceChart out = chart;
    out.name = chart.name + "_rotated";
    out.periodic_u = out.periodic_v = false;
    // (u, v) = (c u' - s v', s u' + c v')
    out.jet_at = [inner = chart.jet_at, c, s](double up, double vp) {
        const ChartJet j = inner(c * up - s * vp, s * up + c * vp);
        ChartJet o;
        o.p = j.p;
        o.du = j.du * c + j.dv * s;
        o.dv = j.du * -s + j.dv * c;
        o.duu = j.duu * (c * c) + j.duv * (2 * c * s) + j.dvv * (s * s);
        o.duv = j.duu * (-c * s) + j.duv * (c * c - s * s) + j.dvv * (c * s);
        o.dvv = j.duu * (s * s) - j.duv * (2 * c * s) + j.dvv * (c * c);
        return o;
    };
    // bounding box of the inverse-rotated domain
    const Domain d = chart.domain;
    double u0 = 1e300, u1 = -1e300, v0 = 1e300, v1 = -1e300;
    for (double u : {d.u0, d.u1})
        for (double v : {d.v0, d.v1}) {
            const double up = c * u + s * v, vp = -s * u + c * v;
            u0 = std::min(u0, up);
            u1 = std::max(u1, up);
            v0 = std::min(v0, vp);
            v1 = std::max(v1, vp);
        }
    out.domain = {u0, u1, v0, v1};
    return out;
}

Atlas ellipsoid_atlas(double a1, double a2, double a3, Perturbation pert) {
    constexpr double vmax = 1.2;
    const double cap = std::cos(vmax);
    const double cap_half_width = cap + 0.05;
    const Domain cap_domain{-cap_half_width, cap_half_width, -cap_half_width, cap_half_width};

    Atlas atlas;
    atlas.name = a1 == a2 && a2 == a3 ? "sphere" : "ellipsoid";
    atlas.euler_characteristic = 2;
    atlas.charts.push_back({ellipsoid_in_hyperplane(a1, a2, a3, pert, vmax),
                            [vmax](double, double v) { return std::abs(v) <= vmax; }});
    const auto owns_cap = [cap](double s, double t) { return s * s + t * t < cap * cap; };
    SurfaceChart north =
        analytic_chart(atlas.name + "_north", cap_domain, ellipsoid_cap_fn(a1, a2, a3, pert, true));
    SurfaceChart south =
        analytic_chart(atlas.name + "_south", cap_domain, ellipsoid_cap_fn(a1, a2, a3, pert, false));
    atlas.charts.push_back({std::move(north), owns_cap});
    atlas.charts.push_back({std::move(south), owns_cap});
    return atlas;
}

Atlas sphere_atlas(double r) { return ellipsoid_atlas(r, r, r); }

Atlas torus_atlas(double R, double r, Perturbation pert) {
    Atlas atlas;
    atlas.name = "torus";
    atlas.euler_characteristic = 0;
    atlas.charts.push_back({torus_in_hyperplane(R, r, pert), [](double, double) { return true; }});
    return atlas;
}

} // namespace spacelike
