#include "spacelike/fields.hpp"

#include "spacelike/errors.hpp"
#include "spacelike/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace spacelike {

namespace {

constexpr double kPi = std::numbers::pi;

using P2 = std::array<double, 2>;

Mat2 inverse(const Mat2& m) {
    const double d = m.det();
    return Mat2{m.m11, -m.m01, -m.m10, m.m00} * (1.0 / d);
}

Mat2 to_matrix(const BDETriple& t) { return {t.A, 0.5 * t.B, 0.5 * t.B, t.C}; }
BDETriple to_triple(const Mat2& m) { return {m.m00, m.m01 + m.m10, m.m11}; }

double point_scale(const SurfaceChart& chart, const QuadraticMap& II) {
    return std::max(II.max_abs(), chart.curvature_floor());
}

BDETriple principal_triple(const FirstFundamentalForm& g, const NuFormCoeffs& c) {
    return {g.F * c.e - g.E * c.f, g.G * c.e - g.E * c.g, g.G * c.f - g.F * c.g};
}

double max3(double a, double b, double c) { return std::max({std::abs(a), std::abs(b), std::abs(c)}); }

} // namespace

const char* to_string(BDEKind k) {
    switch (k) {
    case BDEKind::NuPrincipal: return "principal";
    case BDEKind::Asymptotic: return "asymptotic";
    case BDEKind::MeanDirectional: return "mean_directional";
    }
    return "?";
}

const char* to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

const char* to_string(Polyline::Stop s) {
    switch (s) {
    case Polyline::Stop::MaxLength: return "max_length";
    case Polyline::Stop::Boundary: return "boundary";
    case Polyline::Stop::Singularity: return "singularity";
    case Polyline::Stop::StepUnderflow: return "step_underflow";
    case Polyline::Stop::NoRealDirections: return "no_real_directions";
    }
    return "?";
}

const char* to_string(DarbouxType t) {
    switch (t) {
    case DarbouxType::D1: return "D1";
    case DarbouxType::D2: return "D2";
    case DarbouxType::D3: return "D3";
    case DarbouxType::NonDarbouxian: return "non_darbouxian";
    }
    return "?";
}

std::string HalfInteger::str() const {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

// --- BDE construction ------------------------------------------------------

BDECoeffs principal_bde(const SurfaceChart& chart, NormalField normal_field) {
    BDECoeffs b;
    b.kind = BDEKind::NuPrincipal;
    b.coeff_at = [chart, normal_field](double u, double v) {
        const ChartJet jet = chart(u, v);
        return principal_triple(first_fundamental(jet), nu_form_coeffs(jet, normal_field(u, v)));
    };
    b.norm_at = [chart, normal_field](double u, double v) {
        const ChartJet jet = chart(u, v);
        const Vec4L nu = normal_field(u, v);
        const FirstFundamentalForm g = first_fundamental(jet);
        const NuFormCoeffs c = nu_form_coeffs(jet, nu);
        const double floor = chart.curvature_floor() * euclid_norm(nu);
        const double eg = g.E + g.G;
        return eg * eg * (c.e * c.e + c.f * c.f + c.g * c.g + floor * floor);
    };
    return b;
}

namespace {

DirectionForms forms_at(const SurfaceChart& chart, double u, double v, double* norm) {
    const PointGeometry pg = point_geometry(chart(u, v));
    const double scale = point_scale(chart, pg.II);
    if (norm) {
        const double eg = pg.fff.E + pg.fff.G;
        *norm = eg * eg * scale * scale * scale * scale;
    }
    return adapted_direction_forms(pg, invariants(pg.II, scale), scale);
}

} // namespace

BDECoeffs asymptotic_bde(const SurfaceChart& chart) {
    BDECoeffs b;
    b.kind = BDEKind::Asymptotic;
    b.coeff_at = [chart](double u, double v) { return forms_at(chart, u, v, nullptr).delta_chart; };
    b.norm_at = [chart](double u, double v) {
        double n = 0;
        forms_at(chart, u, v, &n);
        return n;
    };
    return b;
}

BDECoeffs mean_directional_bde(const SurfaceChart& chart) {
    BDECoeffs b;
    b.kind = BDEKind::MeanDirectional;
    b.coeff_at = [chart](double u, double v) { return forms_at(chart, u, v, nullptr).m_chart; };
    b.norm_at = [chart](double u, double v) {
        double n = 0;
        forms_at(chart, u, v, &n);
        return n;
    };
    return b;
}

DirectionForms adapted_direction_forms(const PointGeometry& pg, const InvariantSet& inv,
                                       double scale) {
    const QuadraticMap& q = pg.II;
    const ReductionResult red = reduce_phi(q, scale);
    const auto* d = std::get_if<Diagonalizable>(&red);
    if (!d) throw DegenerateFrame();

    const Frame2L& fr = d->frame;
    const auto comp1 = [&](const Vec2L& x) { return inner2(x, fr.f1); };
    const auto comp2 = [&](const Vec2L& x) { return -inner2(x, fr.f2); };

    // II°(cos t e1 + sin t e2) = cos 2t V1 + sin 2t V2
    const NullBasis nb = null_basis();
    const Vec2L V1 = nb.n1 * q.mu() + nb.n2 * q.mu_p();
    const Vec2L V2 = nb.n1 * q.nu() + nb.n2 * q.nu_p();
    const double P = comp1(V1), Q = comp1(V2);
    const double R = comp2(V1), S = comp2(V2);

    DirectionForms out;
    if (std::hypot(P, Q) >= std::hypot(R, S))
        out.theta0 = 0.5 * std::atan2(Q, P);
    else
        out.theta0 = 0.5 * std::atan2(S, R) - 0.25 * kPi;

    const double c2 = std::cos(2 * out.theta0), s2 = std::sin(2 * out.theta0);
    const Vec2L W1 = V1 * c2 + V2 * s2;
    const Vec2L W2 = V2 * c2 - V1 * s2;
    const double a = comp1(W1);
    const double b = comp2(W2);
    const double al = d->alpha, be = d->beta;
    out.a = a;
    out.b = b;
    out.alpha = al;
    out.beta = be;
    (void)inv;

    out.m_adapted = {-be * a, 2 * al * b, be * a};
    out.delta_adapted = {b * (a + al), 2 * a * be, b * (a - al)};

    const Mat2 rot = rotation(out.theta0);
    const auto to_tangent = [&](const BDETriple& t) {
        return to_triple(rot * to_matrix(t) * rot.transpose());
    };
    out.m_tangent = to_tangent(out.m_adapted);
    out.delta_tangent = to_tangent(out.delta_adapted);

    const Mat2 ti = inverse(pg.frames.to_orthonormal);
    const auto to_chart = [&](const BDETriple& t) {
        return to_triple(ti.transpose() * to_matrix(t) * ti);
    };
    out.m_chart = to_chart(out.m_tangent);
    out.delta_chart = to_chart(out.delta_tangent);
    return out;
}

Vec2L mean_field_normal(const PointGeometry& pg, const InvariantSet& inv, double scale) {
    if (is_negligible(inv.K_N, scale, 2)) throw SingularPhi();
    const Mat2 m = u_phi_null_matrix(pg.II);
    const auto n = inverse(m).apply(std::array<double, 2>{pg.II.h1(), pg.II.h2()});
    return Vec2L::from_null(n[0], n[1]);
}

NormalField mean_normal_field(const SurfaceChart& chart) {
    return [chart](double u, double v) {
        const PointGeometry pg = point_geometry(chart(u, v));
        const double scale = point_scale(chart, pg.II);
        const auto n = mean_field_normal(pg, invariants(pg.II, scale), scale).null_coords();
        return pg.frames.N1 * n[0] + pg.frames.N2 * n[1];
    };
}

NormalField unit_lightcone_field(const SurfaceChart& chart) {
    return [chart](double u, double v) { return adapted_frames(chart(u, v)).N1; };
}

// --- directions --------------------------------------------------------------

DirectionSet solve_directions(const BDETriple& t) {
    DirectionSet out;
    const double s = max3(t.A, t.B, t.C);
    if (s == 0) {
        out.degenerate = true;
        return out;
    }
    const double a = t.A / s, b = t.B / s, c = t.C / s;
    constexpr double eps = 1e-14;
    double disc = b * b - 4 * a * c;
    if (disc < -eps) return out;
    disc = std::max(disc, 0.0);
    const double sq = std::sqrt(disc);

    std::vector<P2> dirs;
    if (a == 0 && c == 0) {
        dirs = {P2{1, 0}, P2{0, 1}};
    } else {
        // With |lead| >= |tail| solve lead r^2 + b r + tail = 0 for r = du/dv
        // (or dv/du after swapping roles).
        const bool swap = std::abs(c) > std::abs(a);
        const double lead = swap ? c : a;
        const double tail = swap ? a : c;
        std::vector<double> roots;
        if (disc <= eps) {
            roots = {-b / (2 * lead)};
        } else {
            const double qq = -0.5 * (b + std::copysign(sq, b));
            roots = {qq / lead, tail / qq};
        }
        for (double r : roots) dirs.push_back(swap ? P2{1, r} : P2{r, 1});
    }

    for (auto& dvec : dirs) {
        const double n = std::hypot(dvec[0], dvec[1]);
        dvec = {dvec[0] / n, dvec[1] / n};
        if (dvec[1] < 0 || (dvec[1] == 0 && dvec[0] < 0)) dvec = {-dvec[0], -dvec[1]};
    }
    std::sort(dirs.begin(), dirs.end(), [](const P2& x, const P2& y) {
        return std::atan2(x[1], x[0]) < std::atan2(y[1], y[0]);
    });
    out.count = static_cast<int>(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) out.dirs[i] = dirs[i];
    return out;
}

// --- integration -------------------------------------------------------------

namespace {

struct Tracer {
    const SurfaceChart& chart;
    const BDECoeffs& bde;

    // Root direction closest to prev, scaled to unit metric length.
    std::optional<P2> direction(const P2& x, const P2& prev) const {
        DirectionSet ds;
        try {
            ds = solve_directions(bde.coeff_at(x[0], x[1]));
        } catch (const DegenerateFrame&) {
            return std::nullopt;
        }
        if (ds.count == 0) return std::nullopt;
        P2 best = ds.dirs[0];
        double best_dot = -1;
        for (int i = 0; i < ds.count; ++i) {
            const double dot = std::abs(ds.dirs[i][0] * prev[0] + ds.dirs[i][1] * prev[1]) /
                               std::max(std::hypot(prev[0], prev[1]), 1e-300);
            if (dot > best_dot) {
                best_dot = dot;
                best = ds.dirs[i];
            }
        }
        if (best[0] * prev[0] + best[1] * prev[1] < 0) best = {-best[0], -best[1]};
        return unit(x, best);
    }

    P2 unit(const P2& x, const P2& w) const {
        const FirstFundamentalForm g = first_fundamental(chart(x[0], x[1]));
        const double n = std::sqrt(g.E * w[0] * w[0] + 2 * g.F * w[0] * w[1] + g.G * w[1] * w[1]);
        return {w[0] / n, w[1] / n};
    }

    struct StepResult {
        P2 x;
        P2 dir;
    };

    std::optional<StepResult> rk4(const P2& x, double h, const P2& prev) const {
        const auto at = [&](const P2& base, const P2& k, double f) {
            return P2{base[0] + f * k[0], base[1] + f * k[1]};
        };
        const auto k1 = direction(x, prev);
        if (!k1) return std::nullopt;
        const auto k2 = direction(at(x, *k1, 0.5 * h), *k1);
        if (!k2) return std::nullopt;
        const auto k3 = direction(at(x, *k2, 0.5 * h), *k2);
        if (!k3) return std::nullopt;
        const auto k4 = direction(at(x, *k3, h), *k3);
        if (!k4) return std::nullopt;
        const P2 nx{x[0] + h / 6 * ((*k1)[0] + 2 * (*k2)[0] + 2 * (*k3)[0] + (*k4)[0]),
                    x[1] + h / 6 * ((*k1)[1] + 2 * (*k2)[1] + 2 * (*k3)[1] + (*k4)[1])};
        return StepResult{nx, *k4};
    }

    double measure(const P2& x) const {
        const BDETriple t = bde.coeff_at(x[0], x[1]);
        return (t.B * t.B - 4 * t.A * t.C) / bde.norm_at(x[0], x[1]);
    }

    bool inside(const P2& x) const {
        const Domain& d = chart.domain;
        if (!chart.periodic_u && (x[0] < d.u0 || x[0] > d.u1)) return false;
        if (!chart.periodic_v && (x[1] < d.v0 || x[1] > d.v1)) return false;
        return true;
    }
};

} // namespace

Polyline integrate_line(const SurfaceChart& chart, const BDECoeffs& bde, P2 seed, Branch branch,
                        double step, double max_len, const IntegrationOptions& opts) {
    Polyline line;
    line.branch = branch;
    line.points.push_back(seed);

    const DirectionSet ds0 = solve_directions(bde.coeff_at(seed[0], seed[1]));
    if (ds0.degenerate) throw SeedAtSingularity();
    if (ds0.count == 0) {
        line.stop = Polyline::Stop::NoRealDirections;
        return line;
    }
    const Tracer tr{chart, bde};
    if (tr.measure(seed) < opts.seed_measure) throw SeedAtSingularity();

    const int pick = (branch == Branch::Minus && ds0.count == 2) ? 1 : 0;
    P2 prev = tr.unit(seed, ds0.dirs[pick]);
    P2 x = seed;
    double h = step;
    const double h_min = 1e-9 * step;

    while (line.length < max_len) {
        h = std::min(h, max_len - line.length);
        const auto full = tr.rk4(x, h, prev);
        const auto half1 = tr.rk4(x, 0.5 * h, prev);
        const auto half2 = half1 ? tr.rk4(half1->x, 0.5 * h, half1->dir) : std::nullopt;
        if (!full || !half2) {
            h *= 0.5;
            if (h < h_min) {
                line.stop = Polyline::Stop::Singularity;
                return line;
            }
            continue;
        }
        const double err = std::hypot(full->x[0] - half2->x[0], full->x[1] - half2->x[1]);
        const double target = opts.tolerance * h;
        const double factor = err > 0 ? 0.9 * std::pow(target / err, 0.25) : 2.0;
        if (err <= target) {
            if (!tr.inside(half2->x)) {
                line.stop = Polyline::Stop::Boundary;
                return line;
            }
            x = half2->x;
            prev = half2->dir;
            line.length += h;
            line.points.push_back(x);
            if (tr.measure(x) < opts.stop_measure) {
                line.stop = Polyline::Stop::Singularity;
                return line;
            }
            h = std::min(step, h * std::min(2.0, factor));
        } else {
            h *= std::max(0.2, factor);
            if (h < h_min) {
                line.stop = Polyline::Stop::StepUnderflow;
                return line;
            }
        }
    }
    line.stop = Polyline::Stop::MaxLength;
    return line;
}

// --- umbilics ---------------------------------------------------------------

std::array<double, 2> umbilic_map(const SurfaceChart& chart, const NormalField& field, double u,
                                  double v) {
    const ChartJet jet = chart(u, v);
    const Mat2 S = nu_shape_matrix(adapted_frames(jet), nu_form_coeffs(jet, field(u, v)));
    return {0.5 * (S.m00 - S.m11), S.m01};
}

HalfInteger umbilic_index(const SurfaceChart& chart, const NormalField& field, P2 p,
                          double radius, int samples) {
    for (int attempt = 0; attempt < 4; ++attempt) {
        const double r = radius / (1 << attempt);
        const int n = samples << attempt;
        const auto angle_at = [&](int k) {
            const double t = 2 * kPi * k / n;
            const auto s = umbilic_map(chart, field, p[0] + r * std::cos(t), p[1] + r * std::sin(t));
            return std::atan2(s[1], s[0]);
        };
        double prev = angle_at(0);
        double total = 0;
        bool ok = true;
        for (int k = 1; k <= n && ok; ++k) {
            const double a = angle_at(k);
            const double inc = std::remainder(a - prev, 2 * kPi);
            if (std::abs(inc) > 0.5 * kPi) ok = false;
            total += inc;
            prev = a;
        }
        if (ok) return HalfInteger{static_cast<int>(std::lround(total / (2 * kPi)))};
    }
    throw AmbiguousWinding();
}

DarbouxType darboux_from_linear(const P2& a, const P2& b, const P2& c, int index_sign) {
    if (index_sign == 0) return DarbouxType::NonDarbouxian;
    // Radial directions solving the BDE: roots of
    // (a1 x + a2 y) x^2 + (b1 x + b2 y) x y + (c1 x + c2 y) y^2.
    double k3 = a[0], k2 = a[1] + b[0], k1 = b[1] + c[0], k0 = c[1];
    const double s = std::max({std::abs(k3), std::abs(k2), std::abs(k1), std::abs(k0)});
    if (s == 0) return DarbouxType::NonDarbouxian;
    k3 /= s, k2 /= s, k1 /= s, k0 /= s;
    const double disc = k2 * k2 * k1 * k1 - 4 * k3 * k1 * k1 * k1 - 4 * k2 * k2 * k2 * k0 -
                        27 * k3 * k3 * k0 * k0 + 18 * k3 * k2 * k1 * k0;
    if (std::abs(disc) <= 1e-8) return DarbouxType::NonDarbouxian;
    if (disc < 0) return DarbouxType::D1;
    return index_sign > 0 ? DarbouxType::D2 : DarbouxType::D3;
}

DarbouxType darboux_type(const SurfaceChart& chart, const NormalField& field, P2 p) {
    const double h = 1e-5 * chart.domain.diameter();
    const BDECoeffs bde = principal_bde(chart, field);
    const BDETriple up = bde.coeff_at(p[0] + h, p[1]), um = bde.coeff_at(p[0] - h, p[1]);
    const BDETriple vp = bde.coeff_at(p[0], p[1] + h), vm = bde.coeff_at(p[0], p[1] - h);
    const auto grad = [&](double BDETriple::*m) {
        return P2{(up.*m - um.*m) / (2 * h), (vp.*m - vm.*m) / (2 * h)};
    };
    const P2 ga = grad(&BDETriple::A), gb = grad(&BDETriple::B), gc = grad(&BDETriple::C);

    const auto su_p = umbilic_map(chart, field, p[0] + h, p[1]);
    const auto su_m = umbilic_map(chart, field, p[0] - h, p[1]);
    const auto sv_p = umbilic_map(chart, field, p[0], p[1] + h);
    const auto sv_m = umbilic_map(chart, field, p[0], p[1] - h);
    const double j00 = (su_p[0] - su_m[0]) / (2 * h), j01 = (sv_p[0] - sv_m[0]) / (2 * h);
    const double j10 = (su_p[1] - su_m[1]) / (2 * h), j11 = (sv_p[1] - sv_m[1]) / (2 * h);
    const double det = j00 * j11 - j01 * j10;
    const double jn = j00 * j00 + j01 * j01 + j10 * j10 + j11 * j11;
    const int sign = (jn == 0 || std::abs(det) <= 1e-6 * jn) ? 0 : (det > 0 ? 1 : -1);
    return darboux_from_linear(ga, gb, gc, sign);
}

namespace {

struct Grid {
    int nu, nv;
    double u0, v0, du, dv;
    bool pu, pv;

    double u(int i) const { return u0 + i * du; }
    double v(int j) const { return v0 + j * dv; }
    std::size_t at(int i, int j) const {
        return static_cast<std::size_t>(((j % nv) + nv) % nv) * nu + ((i % nu) + nu) % nu;
    }
};

Grid make_grid(const SurfaceChart& chart, int nu, int nv) {
    const Domain& d = chart.domain;
    Grid g{nu, nv, d.u0, d.v0, 0, 0, chart.periodic_u, chart.periodic_v};
    g.du = (d.u1 - d.u0) / (g.pu ? nu : nu - 1);
    g.dv = (d.v1 - d.v0) / (g.pv ? nv : nv - 1);
    return g;
}

double wrap(double x, double lo, double hi) {
    const double w = hi - lo;
    double r = std::fmod(x - lo, w);
    if (r < 0) r += w;
    return lo + r;
}

double periodic_delta(double a, double b, bool periodic, double period) {
    double d = std::abs(a - b);
    if (periodic) d = std::min(d, period - d);
    return d;
}

} // namespace

UmbilicSearchResult find_umbilics(const SurfaceChart& chart, const NormalField& field,
                                  const UmbilicSearchOptions& opts) {
    UmbilicSearchResult out;
    const Domain& dom = chart.domain;
    const Grid g = make_grid(chart, opts.n_u, opts.n_v);
    const std::size_t n = static_cast<std::size_t>(g.nu) * g.nv;

    std::vector<P2> U(n);
    std::vector<char> flat(n, 0);
    parallel_for(
        n,
        [&](std::size_t k) {
            const int i = static_cast<int>(k % g.nu), j = static_cast<int>(k / g.nu);
            const double u = g.u(i), v = g.v(j);
            const ChartJet jet = chart(u, v);
            const FirstFundamentalForm fff = first_fundamental(jet);
            const NuFormCoeffs c = nu_form_coeffs(jet, field(u, v));
            const Mat2 S = nu_shape_matrix(adapted_frames(jet), c);
            U[k] = {0.5 * (S.m00 - S.m11), S.m01};
            const BDETriple t = principal_triple(fff, c);
            const double thr =
                opts.degenerate_tau * std::max(fff.E, fff.G) * max3(c.e, c.f, c.g);
            flat[k] = max3(t.A, t.B, t.C) <= thr;
        },
        opts.threads);

    const auto flat_count = std::count(flat.begin(), flat.end(), 1);
    out.umbilic_node_fraction = static_cast<double>(flat_count) / static_cast<double>(n);
    if (out.umbilic_node_fraction > opts.degenerate_fraction) {
        out.degenerate = true;
        return out;
    }

    double s_ref = 0;
    for (const auto& s : U) s_ref = std::max({s_ref, std::abs(s[0]), std::abs(s[1])});
    const double tol = opts.newton_tol * std::max(1.0, s_ref);

    // Cells where both components change sign.
    const int cu = g.pu ? g.nu : g.nu - 1;
    const int cv = g.pv ? g.nv : g.nv - 1;
    std::vector<P2> cells;
    for (int j = 0; j < cv; ++j) {
        for (int i = 0; i < cu; ++i) {
            bool ok = true;
            for (int comp = 0; comp < 2 && ok; ++comp) {
                const double c0 = U[g.at(i, j)][comp], c1 = U[g.at(i + 1, j)][comp];
                const double c2 = U[g.at(i, j + 1)][comp], c3 = U[g.at(i + 1, j + 1)][comp];
                ok = std::min({c0, c1, c2, c3}) <= 0 && std::max({c0, c1, c2, c3}) >= 0;
            }
            if (ok) cells.push_back({g.u(i), g.v(j)});
        }
    }

    const double h_fd = 1e-7 * dom.diameter();
    std::vector<std::optional<UmbilicPoint>> found(cells.size());
    parallel_for(
        cells.size(),
        [&](std::size_t k) {
            const P2 lo = cells[k];
            P2 x{lo[0] + 0.5 * g.du, lo[1] + 0.5 * g.dv};
            const double max_step = std::hypot(g.du, g.dv);
            for (int it = 0; it <= opts.newton_max_iter; ++it) {
                const auto F = umbilic_map(chart, field, x[0], x[1]);
                const double res = std::hypot(F[0], F[1]);
                if (res <= tol) {
                    UmbilicPoint p;
                    p.uv = x;
                    p.residual = res;
                    found[k] = p;
                    return;
                }
                if (it == opts.newton_max_iter) return;
                const auto fu_p = umbilic_map(chart, field, x[0] + h_fd, x[1]);
                const auto fu_m = umbilic_map(chart, field, x[0] - h_fd, x[1]);
                const auto fv_p = umbilic_map(chart, field, x[0], x[1] + h_fd);
                const auto fv_m = umbilic_map(chart, field, x[0], x[1] - h_fd);
                const Mat2 J{(fu_p[0] - fu_m[0]) / (2 * h_fd), (fv_p[0] - fv_m[0]) / (2 * h_fd),
                             (fu_p[1] - fu_m[1]) / (2 * h_fd), (fv_p[1] - fv_m[1]) / (2 * h_fd)};
                const double det = J.det();
                if (!std::isfinite(det) || det == 0) return;
                P2 dx = inverse(J).apply(F);
                const double len = std::hypot(dx[0], dx[1]);
                if (len > max_step) dx = {dx[0] * max_step / len, dx[1] * max_step / len};
                x = {x[0] - dx[0], x[1] - dx[1]};
                // Stay within the cell and its neighbours.
                if (x[0] < lo[0] - g.du || x[0] > lo[0] + 2 * g.du || x[1] < lo[1] - g.dv ||
                    x[1] > lo[1] + 2 * g.dv)
                    return;
                if (!g.pu && (x[0] < dom.u0 || x[0] > dom.u1)) return;
                if (!g.pv && (x[1] < dom.v0 || x[1] > dom.v1)) return;
            }
        },
        opts.threads);

    // Wrap, merge duplicates (first-found wins), sort.
    const double r_merge = opts.r_merge_rel * dom.diameter();
    const double pu = dom.u1 - dom.u0, pv = dom.v1 - dom.v0;
    std::vector<UmbilicPoint> pts;
    for (auto& f : found) {
        if (!f) continue;
        if (g.pu) f->uv[0] = wrap(f->uv[0], dom.u0, dom.u1);
        if (g.pv) f->uv[1] = wrap(f->uv[1], dom.v0, dom.v1);
        const bool dup = std::any_of(pts.begin(), pts.end(), [&](const UmbilicPoint& p) {
            return std::hypot(periodic_delta(p.uv[0], f->uv[0], g.pu, pu),
                              periodic_delta(p.uv[1], f->uv[1], g.pv, pv)) <= r_merge;
        });
        if (!dup) pts.push_back(*f);
    }
    std::sort(pts.begin(), pts.end(),
              [](const UmbilicPoint& a, const UmbilicPoint& b) { return a.uv < b.uv; });

    const double radius = 0.25 * std::min(g.du, g.dv);
    parallel_for(
        pts.size(),
        [&](std::size_t k) {
            UmbilicPoint& p = pts[k];
            p.index = umbilic_index(chart, field, p.uv, radius, opts.index_samples);
            p.darboux = darboux_type(chart, field, p.uv);
            switch (p.darboux) {
            case DarbouxType::D1:
            case DarbouxType::D2: p.consistent = p.index.twice == 1; break;
            case DarbouxType::D3: p.consistent = p.index.twice == -1; break;
            case DarbouxType::NonDarbouxian: p.consistent = true; break;
            }
        },
        opts.threads);
    out.points = std::move(pts);
    return out;
}

PoincareHopfReport poincare_hopf_check(const Atlas& atlas, const FieldFactory& field_for,
                                       const UmbilicSearchOptions& opts) {
    PoincareHopfReport rep;
    rep.chi = atlas.euler_characteristic;
    for (std::size_t c = 0; c < atlas.charts.size(); ++c) {
        const AtlasChart& ac = atlas.charts[c];
        const UmbilicSearchResult res = find_umbilics(ac.chart, field_for(ac.chart), opts);
        if (res.degenerate) {
            rep.degenerate = true;
            continue;
        }
        for (const UmbilicPoint& p : res.points) {
            if (!ac.owns(p.uv[0], p.uv[1])) continue;
            rep.umbilics.push_back({c, p});
            rep.sum.twice += p.index.twice;
        }
    }
    if (rep.degenerate) {
        rep.umbilics.clear();
        rep.sum = {};
    }
    rep.count = rep.umbilics.size();
    return rep;
}

} // namespace spacelike
