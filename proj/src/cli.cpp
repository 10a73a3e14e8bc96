#include "spacelike/cli.hpp"

#include "spacelike/errors.hpp"
#include "spacelike/parallel.hpp"
#include "spacelike/selftest.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

namespace spacelike::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + " must be a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ConfigError(where + " must be an integer");
    return j.get<int>();
}

std::string get_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError(where + " must be a string");
    return j.get<std::string>();
}

double positive(double x, const std::string& where) {
    if (!(x > 0)) throw ConfigError(where + " must be positive");
    return x;
}

const std::map<std::string, std::map<std::string, double>>& fixture_defaults() {
    static const std::map<std::string, std::map<std::string, double>> d = {
        {"plane", {}},
        {"sphere", {{"r", 1.0}}},
        {"ellipsoid", {{"a1", 3.0}, {"a2", 2.0}, {"a3", 1.0}, {"eps", 0.0}}},
        {"torus", {{"R", 2.0}, {"r", 0.7}, {"eps", 0.0}}},
        {"hyperbolic_graph", {{"amp", 0.4}}},
        {"graph4",
         {{"a20", 0.0}, {"a11", 0.0}, {"a02", 0.0}, {"a30", 0.0}, {"a21", 0.0}, {"a12", 0.0},
          {"a03", 0.0}, {"k", 0.0}, {"b30", 0.0}, {"b21", 0.0}, {"b12", 0.0}, {"b03", 0.0},
          {"half_width", 0.5}}},
    };
    return d;
}

std::map<std::string, double> resolved_params(const SurfaceSpec& s) {
    auto it = fixture_defaults().find(s.name);
    if (it == fixture_defaults().end()) throw ConfigError("unknown surface '" + s.name + "'");
    std::map<std::string, double> p = it->second;
    for (const auto& [k, v] : s.params) {
        if (!p.count(k)) throw ConfigError("unknown parameter '" + k + "' for surface " + s.name);
        p[k] = v;
    }
    return p;
}

BDEKind parse_kind(const std::string& s) {
    if (s == "principal") return BDEKind::NuPrincipal;
    if (s == "asymptotic") return BDEKind::Asymptotic;
    if (s == "mean_directional") return BDEKind::MeanDirectional;
    throw ConfigError("line_kind must be principal, asymptotic or mean_directional");
}

json vec_json(const Vec2L& x) {
    const auto n = x.null_coords();
    return {{"N1", n[0]}, {"N2", n[1]}};
}

json opt_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

// Angles in [0, pi) of the solutions of a BDE.
json direction_angles(const BDETriple& t) {
    const DirectionSet ds = solve_directions(t);
    json a = json::array();
    for (int i = 0; i < ds.count; ++i) a.push_back(std::atan2(ds.dirs[i][1], ds.dirs[i][0]));
    return a;
}

struct GridSpec {
    int nu, nv;
    double u0, v0, du, dv;
};

GridSpec node_grid(const SurfaceChart& c, int nu, int nv) {
    const Domain& d = c.domain;
    return {nu, nv, d.u0, d.v0, (d.u1 - d.u0) / (c.periodic_u ? nu : nu - 1),
            (d.v1 - d.v0) / (c.periodic_v ? nv : nv - 1)};
}

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + p.string());
    f << text;
}

UmbilicSearchOptions search_options(const RunConfig& cfg) {
    UmbilicSearchOptions o;
    o.n_u = cfg.n_u;
    o.n_v = cfg.n_v;
    o.newton_tol = cfg.tolerances.newton_tol;
    o.newton_max_iter = cfg.tolerances.newton_max_iter;
    o.r_merge_rel = cfg.tolerances.r_merge_rel;
    o.degenerate_fraction = cfg.tolerances.degenerate_fraction;
    return o;
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

// --- config ------------------------------------------------------------------

RunConfig parse_config(const json& j) {
    check_keys(j, {"surface", "field", "grid", "seeds", "line_kind", "tolerances", "output"},
               "config");
    RunConfig cfg;

    if (j.contains("surface")) {
        const json& s = j["surface"];
        check_keys(s, {"name", "params", "chart"}, "surface");
        if (s.contains("name")) cfg.surface.name = get_string(s["name"], "surface.name");
        if (s.contains("params")) {
            if (!s["params"].is_object()) throw ConfigError("surface.params must be an object");
            for (const auto& [k, v] : s["params"].items())
                cfg.surface.params[k] = get_number(v, "surface.params." + k);
        }
        if (s.contains("chart")) cfg.surface.chart = get_int(s["chart"], "surface.chart");
    }
    resolved_params(cfg.surface); // validates name and parameter names

    if (j.contains("field")) {
        const json& f = j["field"];
        if (f.is_string()) {
            const std::string k = f.get<std::string>();
            if (k == "lightcone") cfg.field.kind = FieldSpec::Kind::Lightcone;
            else if (k == "mean") cfg.field.kind = FieldSpec::Kind::Mean;
            else throw ConfigError("field must be \"lightcone\", \"mean\" or {\"n1\", \"n2\"}");
        } else {
            check_keys(f, {"n1", "n2"}, "field");
            cfg.field.kind = FieldSpec::Kind::NullCombination;
            cfg.field.n1 = f.contains("n1") ? get_number(f["n1"], "field.n1") : 0.0;
            cfg.field.n2 = f.contains("n2") ? get_number(f["n2"], "field.n2") : 0.0;
            if (cfg.field.n1 == 0 && cfg.field.n2 == 0) throw ConfigError("field is the zero vector");
        }
    }

    if (j.contains("grid")) {
        const json& g = j["grid"];
        if (!g.is_array() || g.size() != 2) throw ConfigError("grid must be [n_u, n_v]");
        cfg.n_u = get_int(g[0], "grid[0]");
        cfg.n_v = get_int(g[1], "grid[1]");
        if (cfg.n_u < 2 || cfg.n_v < 2) throw ConfigError("grid sizes must be at least 2");
    }

    if (j.contains("seeds")) {
        if (!j["seeds"].is_array()) throw ConfigError("seeds must be an array");
        for (const json& s : j["seeds"]) {
            check_keys(s, {"u", "v", "branch"}, "seed");
            if (!s.contains("u") || !s.contains("v")) throw ConfigError("seed needs u and v");
            SeedSpec seed{get_number(s["u"], "seed.u"), get_number(s["v"], "seed.v"), Branch::Plus};
            if (s.contains("branch")) {
                const std::string b = get_string(s["branch"], "seed.branch");
                if (b == "minus") seed.branch = Branch::Minus;
                else if (b != "plus") throw ConfigError("seed.branch must be plus or minus");
            }
            cfg.seeds.push_back(seed);
        }
    }

    if (j.contains("line_kind")) cfg.line_kind = parse_kind(get_string(j["line_kind"], "line_kind"));

    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        check_keys(t, {"newton_tol", "newton_max_iter", "r_merge_rel", "degenerate_fraction",
                       "integration_tol", "step", "max_len"},
                   "tolerances");
        Tolerances& o = cfg.tolerances;
        const auto num = [&](const char* k, double& dst) {
            if (t.contains(k)) dst = positive(get_number(t[k], k), std::string("tolerances.") + k);
        };
        num("newton_tol", o.newton_tol);
        num("r_merge_rel", o.r_merge_rel);
        num("degenerate_fraction", o.degenerate_fraction);
        num("integration_tol", o.integration_tol);
        num("step", o.step);
        num("max_len", o.max_len);
        if (t.contains("newton_max_iter")) {
            o.newton_max_iter = get_int(t["newton_max_iter"], "tolerances.newton_max_iter");
            if (o.newton_max_iter <= 0) throw ConfigError("tolerances.newton_max_iter must be positive");
        }
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        check_keys(o, {"directory", "format"}, "output");
        if (o.contains("directory")) cfg.output.directory = get_string(o["directory"], "output.directory");
        if (o.contains("format")) cfg.output.format = get_string(o["format"], "output.format");
    }
    if (cfg.output.format != "csv" && cfg.output.format != "json")
        throw ConfigError("output.format must be csv or json");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

// --- fixtures and fields -----------------------------------------------------

std::optional<Atlas> build_atlas(const SurfaceSpec& s) {
    const auto p = resolved_params(s);
    if (s.name == "sphere") return sphere_atlas(positive(p.at("r"), "sphere r"));
    if (s.name == "ellipsoid")
        return ellipsoid_atlas(positive(p.at("a1"), "a1"), positive(p.at("a2"), "a2"),
                               positive(p.at("a3"), "a3"), {p.at("eps")});
    if (s.name == "torus") {
        if (!(p.at("R") > p.at("r") && p.at("r") > 0)) throw ConfigError("torus needs R > r > 0");
        return torus_atlas(p.at("R"), p.at("r"), {p.at("eps")});
    }
    return std::nullopt;
}

SurfaceChart build_chart(const SurfaceSpec& s) {
    const auto p = resolved_params(s);
    if (auto atlas = build_atlas(s)) {
        if (s.chart < 0 || static_cast<std::size_t>(s.chart) >= atlas->charts.size())
            throw ConfigError("surface.chart out of range");
        return atlas->charts[static_cast<std::size_t>(s.chart)].chart;
    }
    if (s.chart != 0) throw ConfigError("surface.chart must be 0 for single-chart surfaces");
    if (s.name == "plane") return plane();
    if (s.name == "hyperbolic_graph") return hyperbolic_graph(p.at("amp"));
    Graph4Params g;
    g.a20 = p.at("a20"), g.a11 = p.at("a11"), g.a02 = p.at("a02");
    g.a30 = p.at("a30"), g.a21 = p.at("a21"), g.a12 = p.at("a12"), g.a03 = p.at("a03");
    g.k = p.at("k");
    g.b30 = p.at("b30"), g.b21 = p.at("b21"), g.b12 = p.at("b12"), g.b03 = p.at("b03");
    const double hw = positive(p.at("half_width"), "graph4 half_width");
    return graph4(g, {-hw, hw, -hw, hw});
}

NormalField build_field(const FieldSpec& f, const SurfaceChart& chart) {
    switch (f.kind) {
    case FieldSpec::Kind::Lightcone: return lightcone_field(chart);
    case FieldSpec::Kind::Mean: return mean_normal_field(chart);
    case FieldSpec::Kind::NullCombination: break;
    }
    return [chart, a = f.n1, b = f.n2](double u, double v) {
        const AdaptedFrames fr = adapted_frames(chart(u, v));
        return fr.N1 * a + fr.N2 * b;
    };
}

// --- commands ----------------------------------------------------------------

json cmd_point(const RunConfig& cfg, double u, double v) {
    const SurfaceChart chart = build_chart(cfg.surface);
    const Domain& d = chart.domain;
    if ((!chart.periodic_u && (u < d.u0 || u > d.u1)) || (!chart.periodic_v && (v < d.v0 || v > d.v1)))
        throw ConfigError("point outside the chart domain");

    const PointReport r = analyze_point(chart, u, v);
    const InvariantSet& inv = r.invariants;
    const QuadraticMap& q = r.geometry.II;

    json out;
    out["surface"] = cfg.surface.name;
    out["chart"] = chart.name;
    out["u"] = u;
    out["v"] = v;
    out["first_fundamental"] = {{"E", r.geometry.fff.E}, {"F", r.geometry.fff.F}, {"G", r.geometry.fff.G}};
    out["second_fundamental"] = {{"x", q.x}, {"y", q.y}, {"z", q.z}, {"u", q.u}, {"v", q.v}, {"w", q.w}};
    out["invariants"] = {{"H", vec_json(inv.H)},   {"H_norm2", inv.H_norm2},   {"K", inv.K},
                         {"K_N", inv.K_N},         {"Delta", inv.Delta},       {"zeta", opt_json(inv.zeta)},
                         {"a2", opt_json(inv.a2)}, {"b2", opt_json(inv.b2)},   {"alpha", opt_json(inv.alpha)},
                         {"beta", opt_json(inv.beta)}};
    out["class"] = to_string(r.point_class.tag);
    out["zeta"] = opt_json(r.point_class.zeta);

    json e;
    e["center"] = vec_json(r.ellipse.center);
    if (const auto* ne = std::get_if<EllipseNonDegenerate>(&r.ellipse.shape)) {
        e["shape"] = "ellipse";
        e["a"] = ne->a;
        e["b"] = ne->b;
        e["axis1"] = vec_json(ne->frame.f1);
        e["axis2"] = vec_json(ne->frame.f2);
    } else if (const auto* s = std::get_if<EllipseSegment>(&r.ellipse.shape)) {
        e["shape"] = "segment";
        e["xi"] = vec_json(s->xi);
        e["character"] = to_string(s->character);
    } else {
        e["shape"] = "point";
    }
    out["ellipse"] = e;
    out["origin"] = to_string(origin_position(q, r.scale));

    json dir;
    const NormalField field = build_field(cfg.field, chart);
    try {
        dir["principal"] = direction_angles(principal_bde(chart, field).coeff_at(u, v));
    } catch (const SingularPhi&) {
        dir["principal"] = nullptr;
    }
    try {
        const DirectionForms f = adapted_direction_forms(r.geometry, inv, r.scale);
        dir["frame_angle"] = f.theta0;
        dir["asymptotic"] = direction_angles(f.delta_chart);
        dir["mean_directional"] = direction_angles(f.m_chart);
    } catch (const DegenerateFrame&) {
        dir["frame_angle"] = nullptr;
        dir["asymptotic"] = nullptr;
        dir["mean_directional"] = nullptr;
    }
    out["directions"] = dir;

    if (is_negligible(inv.K_N, r.scale, 2)) {
        out["wong_angle"] = nullptr;
        out["wong_note"] = "K_N vanishes";
    } else if (inv.Delta < 0 && !is_negligible(inv.Delta, r.scale, 4)) {
        out["wong_angle"] = nullptr;
        out["wong_note"] = "no real asymptotic directions";
    } else {
        out["wong_angle"] = std::atan(2 * std::sqrt(std::max(inv.Delta, 0.0)) / std::abs(inv.K_N));
        out["wong_note"] = nullptr;
    }
    return out;
}

std::string cmd_field(const RunConfig& cfg) {
    const SurfaceChart chart = build_chart(cfg.surface);
    const GridSpec g = node_grid(chart, cfg.n_u, cfg.n_v);
    const std::size_t n = static_cast<std::size_t>(g.nu) * g.nv;
    const bool as_json = cfg.output.format == "json";

    std::vector<PointReport> reports(n);
    parallel_for(n, [&](std::size_t k) {
        const int i = static_cast<int>(k % g.nu), j = static_cast<int>(k / g.nu);
        reports[k] = analyze_point(chart, g.u0 + i * g.du, g.v0 + j * g.dv);
    });

    const std::vector<std::string> cols = {"u", "v", "H1", "H2", "H_norm2", "K", "K_N", "Delta", "class", "a2", "b2"};
    std::string text;
    json rows = json::array();
    if (!as_json) {
        for (std::size_t c = 0; c < cols.size(); ++c) text += (c ? "," : "") + cols[c];
        text += "\n";
    }
    for (std::size_t k = 0; k < n; ++k) {
        const int i = static_cast<int>(k % g.nu), j = static_cast<int>(k / g.nu);
        const PointReport& r = reports[k];
        const InvariantSet& inv = r.invariants;
        const double u = g.u0 + i * g.du, v = g.v0 + j * g.dv;
        const double h1 = r.geometry.II.h1(), h2 = r.geometry.II.h2();
        const char* cls = to_string(r.point_class.tag);
        if (as_json) {
            rows.push_back({u, v, h1, h2, inv.H_norm2, inv.K, inv.K_N, inv.Delta, cls,
                            opt_json(inv.a2), opt_json(inv.b2)});
        } else {
            const auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
            text += format_double(u) + "," + format_double(v) + "," + format_double(h1) + "," +
                    format_double(h2) + "," + format_double(inv.H_norm2) + "," + format_double(inv.K) + "," +
                    format_double(inv.K_N) + "," + format_double(inv.Delta) + "," + cls + "," +
                    opt(inv.a2) + "," + opt(inv.b2) + "\n";
        }
    }
    const fs::path path = fs::path(cfg.output.directory) / (as_json ? "field.json" : "field.csv");
    if (as_json) {
        json doc;
        doc["surface"] = cfg.surface.name;
        doc["chart"] = chart.name;
        doc["grid"] = {cfg.n_u, cfg.n_v};
        doc["columns"] = cols;
        doc["rows"] = std::move(rows);
        text = doc.dump(1) + "\n";
    }
    write_file(path, text);
    return path.string();
}

json cmd_umbilics(const RunConfig& cfg) {
    const UmbilicSearchOptions opts = search_options(cfg);
    json rep;
    rep["surface"] = cfg.surface.name;
    rep["grid"] = {cfg.n_u, cfg.n_v};

    std::vector<AtlasUmbilic> points;
    const auto atlas = build_atlas(cfg.surface);
    if (atlas) {
        const PoincareHopfReport ph = poincare_hopf_check(
            *atlas, [&](const SurfaceChart& c) { return build_field(cfg.field, c); }, opts);
        rep["closed"] = true;
        rep["degenerate"] = ph.degenerate;
        rep["euler_characteristic"] = ph.chi;
        rep["poincare_hopf"] = ph.degenerate ? "skipped_degenerate" : (ph.holds() ? "holds" : "violated");
        points = ph.umbilics;
    } else {
        const SurfaceChart chart = build_chart(cfg.surface);
        const UmbilicSearchResult res = find_umbilics(chart, build_field(cfg.field, chart), opts);
        rep["closed"] = false;
        rep["degenerate"] = res.degenerate;
        rep["euler_characteristic"] = nullptr;
        rep["poincare_hopf"] = "not_applicable";
        for (const UmbilicPoint& p : res.points) points.push_back({0, p});
    }

    HalfInteger sum;
    json list = json::array();
    std::string csv = "chart,u,v,index,darboux,residual\n";
    for (const AtlasUmbilic& a : points) {
        const UmbilicPoint& p = a.point;
        sum.twice += p.index.twice;
        list.push_back({{"chart", a.chart},
                        {"u", p.uv[0]},
                        {"v", p.uv[1]},
                        {"index", p.index.str()},
                        {"index_value", p.index.value()},
                        {"darboux", to_string(p.darboux)},
                        {"residual", p.residual},
                        {"consistent", p.consistent}});
        csv += std::to_string(a.chart) + "," + format_double(p.uv[0]) + "," + format_double(p.uv[1]) + "," +
               p.index.str() + "," + to_string(p.darboux) + "," + format_double(p.residual) + "\n";
    }
    rep["umbilics"] = std::move(list);
    rep["count"] = points.size();
    rep["sum_indices"] = sum.str();
    rep["sum_indices_value"] = sum.value();

    const fs::path dir(cfg.output.directory);
    write_file(dir / "umbilics.json", rep.dump(1) + "\n");
    if (cfg.output.format == "csv") write_file(dir / "umbilics.csv", csv);
    return rep;
}

json cmd_lines(const RunConfig& cfg) {
    json summary;
    summary["surface"] = cfg.surface.name;
    summary["kind"] = to_string(cfg.line_kind);
    summary["lines"] = json::array();
    if (cfg.seeds.empty()) return summary;

    const SurfaceChart chart = build_chart(cfg.surface);
    BDECoeffs bde;
    switch (cfg.line_kind) {
    case BDEKind::NuPrincipal: bde = principal_bde(chart, build_field(cfg.field, chart)); break;
    case BDEKind::Asymptotic: bde = asymptotic_bde(chart); break;
    case BDEKind::MeanDirectional: bde = mean_directional_bde(chart); break;
    }
    IntegrationOptions io;
    io.tolerance = cfg.tolerances.integration_tol;

    std::vector<json> entries(cfg.seeds.size());
    std::vector<std::optional<Polyline>> lines(cfg.seeds.size());
    parallel_for(cfg.seeds.size(), [&](std::size_t k) {
        const SeedSpec& s = cfg.seeds[k];
        json e{{"seed", {s.u, s.v}}, {"branch", to_string(s.branch)}, {"file", nullptr}};
        try {
            Polyline pl = integrate_line(chart, bde, {s.u, s.v}, s.branch, cfg.tolerances.step,
                                         cfg.tolerances.max_len, io);
            e["points"] = pl.points.size();
            e["length"] = pl.length;
            e["stop"] = to_string(pl.stop);
            e["note"] = pl.stop == Polyline::Stop::NoRealDirections ? json("no real directions") : json(nullptr);
            if (pl.stop != Polyline::Stop::NoRealDirections) lines[k] = std::move(pl);
        } catch (const GeometryError& err) {
            e["points"] = 0;
            e["length"] = 0;
            e["stop"] = "error";
            e["note"] = err.what();
        }
        entries[k] = std::move(e);
    });

    const fs::path dir(cfg.output.directory);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!lines[k]) continue;
        char name[32];
        std::snprintf(name, sizeof name, "line_%03zu.csv", k);
        std::string text = "u,v\n";
        for (const auto& p : lines[k]->points) text += format_double(p[0]) + "," + format_double(p[1]) + "\n";
        write_file(dir / name, text);
        entries[k]["file"] = name;
    }
    for (auto& e : entries) summary["lines"].push_back(std::move(e));
    write_file(dir / "lines.json", summary.dump(1) + "\n");
    return summary;
}

// --- entry point -------------------------------------------------------------

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Curvature invariants, line fields and umbilics of spacelike surfaces in R^{3,1}",
                 "spacelike-surf"};
    app.require_subcommand(1);

    std::string config_path, output_dir, format;
    std::vector<int> grid;
    double pu = 0, pv = 0;
    bool quick = false;
    std::uint64_t seed = kDefaultSelftestSeed;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "JSON run configuration")->required();
        sub->add_option("-o,--output", output_dir, "Output directory (overrides output.directory)");
        sub->add_option("--format", format, "csv or json (overrides output.format)");
        sub->add_option("--grid", grid, "n_u n_v (overrides grid)")->expected(2);
    };
    CLI::App* point = app.add_subcommand("point", "Per-point report as JSON on stdout");
    add_common(point);
    point->add_option("-u", pu, "Parameter u")->required();
    point->add_option("-v", pv, "Parameter v")->required();
    CLI::App* field = app.add_subcommand("field", "Invariant grid written to field.csv / field.json");
    add_common(field);
    CLI::App* umb = app.add_subcommand("umbilics", "Umbilic search, indices, Poincare-Hopf");
    add_common(umb);
    CLI::App* lines = app.add_subcommand("lines", "Trace line fields from the configured seeds");
    add_common(lines);
    CLI::App* self = app.add_subcommand("selftest", "Randomized property suites");
    self->add_flag("--quick", quick, "10^2 samples per suite");
    self->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 3;
    }

    try {
        if (self->parsed()) {
            const auto results = run_selftest({seed, quick});
            bool ok = true;
            for (const SuiteResult& r : results) {
                ok = ok && r.passed();
                out << (r.passed() ? "PASS " : "FAIL ") << r.name << " samples=" << r.samples
                    << " failures=" << r.failures << " max_residual=" << format_double(r.max_residual)
                    << " tol=" << format_double(r.tolerance) << "\n";
            }
            out << (ok ? "selftest passed" : "selftest FAILED") << " (seed " << seed << ")\n";
            return ok ? 0 : 1;
        }

        RunConfig cfg = load_config(config_path);
        if (!output_dir.empty()) cfg.output.directory = output_dir;
        if (!format.empty()) {
            if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");
            cfg.output.format = format;
        }
        if (!grid.empty()) {
            if (grid[0] < 2 || grid[1] < 2) throw ConfigError("grid sizes must be at least 2");
            cfg.n_u = grid[0];
            cfg.n_v = grid[1];
        }

        if (point->parsed()) {
            out << cmd_point(cfg, pu, pv).dump(1) << "\n";
        } else if (field->parsed()) {
            out << "wrote " << cmd_field(cfg) << "\n";
        } else if (umb->parsed()) {
            const json rep = cmd_umbilics(cfg);
            out << "umbilics: " << rep["count"].get<std::size_t>() << ", index sum "
                << rep["sum_indices"].get<std::string>() << ", poincare_hopf "
                << rep["poincare_hopf"].get<std::string>() << (rep["degenerate"].get<bool>() ? " (degenerate)" : "")
                << "\n";
        } else if (lines->parsed()) {
            const json rep = cmd_lines(cfg);
            for (const json& l : rep["lines"]) {
                out << "seed (" << format_double(l["seed"][0].get<double>()) << ", "
                    << format_double(l["seed"][1].get<double>()) << ") " << l["branch"].get<std::string>() << ": "
                    << l["stop"].get<std::string>();
                if (!l["note"].is_null()) out << " (" << l["note"].get<std::string>() << ")";
                out << "\n";
            }
        }
        return 0;
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const GeometryError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace spacelike::cli
