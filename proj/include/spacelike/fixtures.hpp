#pragma once
// Built-in surfaces with analytic jets, and atlases for the closed ones.

#include "spacelike/surface.hpp"

#include <vector>

namespace spacelike {

/// Coefficients of phi(u,v) = u e1 + v e2 + A(u,v) N1 + B(u,v) N2 with
/// A = (a20 u^2 + 2 a11 uv + a02 v^2)/2 + (a30 u^3 + 3 a21 u^2 v + 3 a12 uv^2 + a03 v^3)/6
/// B = k (u^2 + v^2)/2 + (b30 u^3 + 3 b21 u^2 v + 3 b12 uv^2 + b03 v^3)/6.
/// The ambient null pair is N1 = (e3 + e4)/sqrt2, N2 = (e4 - e3)/sqrt2.
struct Graph4Params {
    double a20 = 0, a11 = 0, a02 = 0;
    double a30 = 0, a21 = 0, a12 = 0, a03 = 0;
    double k = 0;
    double b30 = 0, b21 = 0, b12 = 0, b03 = 0;
};

SurfaceChart graph4(const Graph4Params& p, Domain domain = {-0.5, 0.5, -0.5, 0.5});
std::function<Vec4L(double, double)> graph4_point(const Graph4Params& p);

SurfaceChart plane();

/// Round sphere of radius r in {x4 = 0}; longitude u, latitude v.
SurfaceChart sphere_in_hyperplane(double r);

/// Perturbation added to x4 on closed fixtures: eps * g(x1, x2, x3).
struct Perturbation {
    double eps = 0;
};

/// Equatorial chart (longitude u in [-pi, pi], latitude v in [-vmax, vmax]) of
/// the ellipsoid x1^2/a1^2 + x2^2/a2^2 + x3^2/a3^2 = 1 in {x4 = 0}.
SurfaceChart ellipsoid_in_hyperplane(double a1, double a2, double a3, Perturbation pert = {},
                                     double vmax = 1.2);

/// Torus of revolution about the x3 axis, periodic in both parameters.
SurfaceChart torus_in_hyperplane(double R, double r, Perturbation pert = {});

/// Graph (u, v, h, sqrt(1 + u^2 + v^2 + h^2)) lying in H^3_+(-1), with
/// h = amp * (sin(1.3 u) cos(0.7 v) + 0.5 u v).
SurfaceChart hyperbolic_graph(double amp, Domain domain = {-1, 1, -1, 1});

/// Chart (u', v') -> chart(R(angle) (u', v')).
SurfaceChart rotate_parameters(const SurfaceChart& chart, double angle);

struct AtlasChart {
    SurfaceChart chart;
    /// Parameter points this chart is responsible for; the owned sets of an
    /// atlas partition the surface.
    std::function<bool(double, double)> owns;
};

struct Atlas {
    std::string name;
    int euler_characteristic = 0;
    std::vector<AtlasChart> charts;
};

/// Equatorial chart plus two polar caps.
Atlas ellipsoid_atlas(double a1, double a2, double a3, Perturbation pert = {});
Atlas sphere_atlas(double r);
/// Single doubly periodic chart.
Atlas torus_atlas(double R, double r, Perturbation pert = {});

} // namespace spacelike
