#pragma once
// Spacelike immersed surfaces in R^{3,1}: chart jets, fundamental forms,
// adapted tangent/normal frames, the lightcone normal, and per-point analysis.

#include "spacelike/ellipse.hpp"
#include "spacelike/lorentz.hpp"
#include "spacelike/quadratic_map.hpp"

#include <functional>
#include <optional>
#include <string>

namespace spacelike {

/// Second-order jet of an immersion phi at a parameter point.
struct ChartJet {
    Vec4L p, du, dv, duu, duv, dvv;
};

struct Domain {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;

    double diameter() const { return std::hypot(u1 - u0, v1 - v0); }
    bool contains(double u, double v) const { return u >= u0 && u <= u1 && v >= v0 && v <= v1; }
};

struct SurfaceChart {
    std::string name;
    Domain domain;
    bool periodic_u = false;
    bool periodic_v = false;
    bool analytic = true;
    std::optional<double> fd_step; // set for finite-difference charts
    std::function<ChartJet(double, double)> jet_at;

    ChartJet operator()(double u, double v) const { return jet_at(u, v); }
    /// Floor of the curvature scale used for relative thresholds.
    double curvature_floor() const { return 1.0 / domain.diameter(); }
};

/// Function (u, v) -> normal vector at phi(u, v).
using NormalField = std::function<Vec4L(double, double)>;

struct FirstFundamentalForm {
    double E = 0, F = 0, G = 0;
};

struct AdaptedFrames {
    Vec4L e1, e2; // orthonormal tangent frame, e1 along phi_u
    Vec4L ns, nt; // unit spacelike / future timelike normals
    Vec4L N1, N2; // null normal frame, <N1,N2> = -1
    /// (e1, e2) = (phi_u, phi_v) * to_orthonormal.
    Mat2 to_orthonormal;
};

struct PointGeometry {
    FirstFundamentalForm fff;
    AdaptedFrames frames;
    QuadraticMap II;
};

struct NuFormCoeffs {
    double e = 0, f = 0, g = 0;
};

/// Throws NotSpacelike when E <= 0 or EG - F^2 <= 0.
FirstFundamentalForm first_fundamental(const ChartJet& jet);

AdaptedFrames adapted_frames(const ChartJet& jet);

/// II in the frames (e1, e2) and (N1, N2).
QuadraticMap second_fundamental(const ChartJet& jet);
QuadraticMap second_fundamental(const ChartJet& jet, const AdaptedFrames& frames);

PointGeometry point_geometry(const ChartJet& jet);

/// n^t + n^s.
Vec4L lightcone_normal(const PointGeometry& pg);

/// (<phi_uu, nu>, <phi_uv, nu>, <phi_vv, nu>). Throws NotNormal when nu has a
/// tangential component beyond tolerance.
NuFormCoeffs nu_form_coeffs(const ChartJet& jet, const Vec4L& nu);

/// Matrix of S_nu in the orthonormal frame (e1, e2).
Mat2 nu_shape_matrix(const AdaptedFrames& frames, const NuFormCoeffs& c);

struct PointReport {
    PointGeometry geometry;
    InvariantSet invariants;
    PointClass point_class;
    EllipseData ellipse;
    double scale = 0; // scale used by the relative thresholds
};

PointReport analyze_point(const SurfaceChart& chart, double u, double v);

/// Lightcone normal field n^t + n^s over a chart.
NormalField lightcone_field(const SurfaceChart& chart);

/// Chart whose jets come from central differences of point_fn with step h.
SurfaceChart finite_difference_adapter(std::string name, Domain domain,
                                       std::function<Vec4L(double, double)> point_fn,
                                       std::optional<double> h = std::nullopt);

} // namespace spacelike
