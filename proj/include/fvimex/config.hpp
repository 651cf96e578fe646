#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fvimex/grid.hpp"
#include "fvimex/linsolve.hpp"
#include "fvimex/model.hpp"
#include "fvimex/timestep.hpp"

namespace fvimex {

/// Everything a CLI run needs, validated before any computation.
struct RunConfig {
    ModelParams params = BasketParams{};
    Bounds bounds{0.0, 150.0, 0.0, 150.0};
    int nx = 100;
    int ny = 100;
    std::vector<int> meshes{25, 50, 100};
    Scheme scheme = Scheme::Imex;
    double cfl = 0.5;
    SolverOptions solver;
    std::string out;

    ModelKind kind() const noexcept { return kind_of(params); }
    void validate() const;
};

/// Ordered key = value settings. A `preset` key loads one of test1..test4
/// first; every other key then overrides it regardless of position.
using Settings = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment, blank lines ignored.
/// Throws ConfigError (field = key or "line N") on malformed input.
Settings parse_settings(std::istream& in);
Settings read_settings_file(const std::string& path);

/// Builds a validated config. Unknown keys, keys that do not apply to the
/// chosen model, and unparsable values raise ConfigError naming the key.
RunConfig make_config(const Settings& settings);

/// Settings of a built-in preset ("test1".."test4").
Settings preset_settings(const std::string& name);

/// Field files: a three-line text header followed by one "x y value" row per
/// cell in row-major order, 17 significant digits:
///   # fvimex field v1
///   nx <nx> ny <ny>
///   bounds <xmin> <xmax> <ymin> <ymax>
void write_field(std::ostream& out, const GridField& field, const Grid2D& grid);
void write_field_file(const std::string& path, const GridField& field, const Grid2D& grid);

struct FieldFile {
    Grid2D grid;
    GridField field;
};

/// Throws ConfigError on a malformed file or rows inconsistent with the
/// header.
FieldFile read_field(std::istream& in);
FieldFile read_field_file(const std::string& path);

}  // namespace fvimex
