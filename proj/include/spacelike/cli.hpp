#pragma once
// Command-line front end of spacelike-surf: config parsing and the point,
// field, umbilics, lines and selftest commands.

#include "spacelike/fields.hpp"
#include "spacelike/fixtures.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spacelike::cli {

struct SurfaceSpec {
    std::string name = "ellipsoid";
    std::map<std::string, double> params; // missing keys take fixture defaults
    int chart = 0;                        // atlas chart used by point/field/lines
};

struct FieldSpec {
    enum class Kind { Lightcone, Mean, NullCombination };
    Kind kind = Kind::Lightcone;
    double n1 = 1, n2 = 0; // NullCombination: n1 N1 + n2 N2 of the adapted frame
};

struct SeedSpec {
    double u = 0, v = 0;
    Branch branch = Branch::Plus;
};

struct Tolerances {
    double newton_tol = 1e-11;
    int newton_max_iter = 50;
    double r_merge_rel = 1e-6;
    double degenerate_fraction = 0.05;
    double integration_tol = 1e-8;
    double step = 0.02;
    double max_len = 10.0;
};

struct OutputSpec {
    std::string directory = "out";
    std::string format = "csv"; // csv | json
};

struct RunConfig {
    SurfaceSpec surface;
    FieldSpec field;
    int n_u = 256, n_v = 256;
    std::vector<SeedSpec> seeds;
    BDEKind line_kind = BDEKind::NuPrincipal;
    Tolerances tolerances;
    OutputSpec output;
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Chart selected by the surface spec. Throws ConfigError.
SurfaceChart build_chart(const SurfaceSpec& s);
/// Atlas of a closed fixture (sphere, ellipsoid, torus), nullopt otherwise.
std::optional<Atlas> build_atlas(const SurfaceSpec& s);
NormalField build_field(const FieldSpec& f, const SurfaceChart& chart);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

nlohmann::json cmd_point(const RunConfig& cfg, double u, double v);
/// Writes field.csv or field.json; returns the path written.
std::string cmd_field(const RunConfig& cfg);
/// Writes umbilics.json (and umbilics.csv for csv format); returns the report.
nlohmann::json cmd_umbilics(const RunConfig& cfg);
/// Writes one u,v CSV per traced curve and lines.json; returns the summary.
nlohmann::json cmd_lines(const RunConfig& cfg);

/// Entry point. Exit codes: 0 ok, 1 selftest failure, 2 geometry error,
/// 3 config or usage error.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace spacelike::cli
