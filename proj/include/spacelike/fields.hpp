#pragma once
// Line fields on a spacelike surface given by binary differential equations
// A du^2 + B du dv + C dv^2 = 0: nu-principal, asymptotic and mean
// directionally curved lines; tracing, umbilic detection, index, Darboux type
// and Poincare-Hopf bookkeeping over an atlas.

#include "spacelike/fixtures.hpp"
#include "spacelike/surface.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace spacelike {

/// Coefficients of A du^2 + B du dv + C dv^2.
struct BDETriple {
    double A = 0, B = 0, C = 0;
};

enum class BDEKind { NuPrincipal, Asymptotic, MeanDirectional };

const char* to_string(BDEKind k);

struct BDECoeffs {
    BDEKind kind = BDEKind::NuPrincipal;
    std::function<BDETriple(double, double)> coeff_at;
    /// Positive normalization of the discriminant B^2 - 4AC with the same
    /// homogeneity, used to measure closeness to a singularity.
    std::function<double(double, double)> norm_at;
};

/// (Fe - Ef, Ge - Eg, Gf - Fg) with (e, f, g) paired with normal_field.
BDECoeffs principal_bde(const SurfaceChart& chart, NormalField normal_field);
BDECoeffs asymptotic_bde(const SurfaceChart& chart);
BDECoeffs mean_directional_bde(const SurfaceChart& chart);

/// m and delta forms at a point with a diagonalizable reduction.
///
/// The adapted frame is (e1', e2') = rotation(theta0) (e1, e2), where
/// II°(cos t e1' + sin t e2') = a cos 2t u~1 + b sin 2t u~2 with a, b signed.
struct DirectionForms {
    double theta0 = 0;
    double a = 0, b = 0;         // signed semi-axis coefficients
    double alpha = 0, beta = 0;  // H = alpha u~1 + beta u~2
    BDETriple m_adapted, delta_adapted;  // in (e1', e2') coordinates
    BDETriple m_tangent, delta_tangent;  // in (e1, e2) coordinates
    BDETriple m_chart, delta_chart;      // in (du, dv)
};

/// Throws DegenerateFrame when the reduction is not diagonalizable.
DirectionForms adapted_direction_forms(const PointGeometry& pg, const InvariantSet& inv,
                                       double scale);

/// u_Phi^{-1}(H) in the normal plane. Throws SingularPhi when K_N vanishes.
Vec2L mean_field_normal(const PointGeometry& pg, const InvariantSet& inv, double scale);

/// The normal field (u, v) -> u_Phi^{-1}(H) realized in R^{3,1}.
NormalField mean_normal_field(const SurfaceChart& chart);

/// Scaled lightcone field (n^t + n^s)/sqrt2, equal to N1 of the adapted frame.
NormalField unit_lightcone_field(const SurfaceChart& chart);

/// Real solutions of a BDE at a point.
struct DirectionSet {
    int count = 0;                    // 0, 1 or 2
    bool degenerate = false;          // all coefficients vanish: every direction solves
    std::array<std::array<double, 2>, 2> dirs{};  // unit (du, dv), angle in [0, pi), sorted
};

DirectionSet solve_directions(const BDETriple& t);

enum class Branch { Plus, Minus };

const char* to_string(Branch b);

struct Polyline {
    std::vector<std::array<double, 2>> points;
    Branch branch = Branch::Plus;
    double length = 0; // arc length in the induced metric

    enum class Stop { MaxLength, Boundary, Singularity, StepUnderflow, NoRealDirections };
    Stop stop = Stop::MaxLength;
};

const char* to_string(Polyline::Stop s);

struct IntegrationOptions {
    double tolerance = 1e-8;      // local error per unit length
    double stop_measure = 1e-10;  // stop when B^2-4AC falls below this times norm
    double seed_measure = 1e-12;  // SeedAtSingularity below this
};

/// Adaptive RK4 (step doubling) along the chosen branch. step is the initial
/// and maximal metric step. Throws SeedAtSingularity.
Polyline integrate_line(const SurfaceChart& chart, const BDECoeffs& bde,
                        std::array<double, 2> seed, Branch branch, double step, double max_len,
                        const IntegrationOptions& opts = {});

/// Index of a line-field singularity: an integer multiple of 1/2.
struct HalfInteger {
    int twice = 0;

    constexpr double value() const { return 0.5 * twice; }
    std::string str() const;
    constexpr bool operator==(const HalfInteger&) const = default;
};

enum class DarbouxType { D1, D2, D3, NonDarbouxian };

const char* to_string(DarbouxType t);

struct UmbilicPoint {
    std::array<double, 2> uv{};
    HalfInteger index;
    DarbouxType darboux = DarbouxType::NonDarbouxian;
    double residual = 0;
    /// False when the Darboux type contradicts the index table
    /// (D1, D2 -> +1/2, D3 -> -1/2).
    bool consistent = true;
};

/// (s_d, s_o) = ((S11 - S22)/2, S12) of S_nu in the orthonormal frame.
std::array<double, 2> umbilic_map(const SurfaceChart& chart, const NormalField& field, double u,
                                  double v);

struct UmbilicSearchOptions {
    int n_u = 256;
    int n_v = 256;
    double newton_tol = 1e-11;
    int newton_max_iter = 50;
    double r_merge_rel = 1e-6;          // times the domain diameter
    double degenerate_fraction = 0.05;  // of grid nodes
    double degenerate_tau = 1e-8;
    int index_samples = 64;
    int threads = 0;
};

struct UmbilicSearchResult {
    bool degenerate = false;
    double umbilic_node_fraction = 0;
    std::vector<UmbilicPoint> points; // sorted by (u, v)
};

UmbilicSearchResult find_umbilics(const SurfaceChart& chart, const NormalField& field,
                                  const UmbilicSearchOptions& opts = {});

/// Half the winding number of (s_d, s_o) around a circle. Throws
/// AmbiguousWinding when increments stay above pi/2 after refinement.
HalfInteger umbilic_index(const SurfaceChart& chart, const NormalField& field,
                          std::array<double, 2> p, double radius, int samples = 64);

DarbouxType darboux_type(const SurfaceChart& chart, const NormalField& field,
                         std::array<double, 2> p);

/// Darboux type of a BDE whose coefficients are linear, A = a1 x + a2 y etc.,
/// together with the index sign of the umbilic map (+1 or -1, 0 if degenerate).
DarbouxType darboux_from_linear(const std::array<double, 2>& a, const std::array<double, 2>& b,
                                const std::array<double, 2>& c, int index_sign);

using FieldFactory = std::function<NormalField(const SurfaceChart&)>;

struct AtlasUmbilic {
    std::size_t chart = 0;
    UmbilicPoint point;
};

struct PoincareHopfReport {
    bool degenerate = false;
    HalfInteger sum;
    int chi = 0;
    std::size_t count = 0;
    std::vector<AtlasUmbilic> umbilics;

    bool holds() const { return !degenerate && sum.twice == 2 * chi; }
};

PoincareHopfReport poincare_hopf_check(const Atlas& atlas, const FieldFactory& field_for,
                                       const UmbilicSearchOptions& opts = {});

} // namespace spacelike
