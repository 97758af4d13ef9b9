#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wgif/analysis.hpp"
#include "wgif/mesh.hpp"
#include "wgif/problems.hpp"

namespace wgif {

/// Everything a command needs; library calls with the same RunConfig reproduce its output.
///
/// Flat key-value file keys (one `key = value` per line, '#' starts a comment):
///   problem, b, kappa, level, levels, mesh_dir, out, format, forcing, hfd.
/// `format` is a comma-separated list of csv and markdown; `forcing` is analytic or fd.
struct RunConfig {
  int problem = 1;
  ProblemParameters params;
  /// Level solved by `solve`.
  int level = 1;
  /// Levels 1..levels are meshed or studied.
  int levels = 5;
  /// Directory with level<L>.node / level<L>.ele; empty selects the builtin family.
  std::filesystem::path mesh_dir;
  std::filesystem::path out_dir = ".";
  std::vector<TableFormat> formats{TableFormat::Csv, TableFormat::Markdown};
  ForcingMode forcing = ForcingMode::Analytic;
  double h_fd = 1e-3;
};

/// Applies `key = value` lines to `config`. Throws ParseError for unknown keys or bad values.
void read_config(std::istream& in, RunConfig& config);
void read_config(const std::filesystem::path& file, RunConfig& config);

/// Applies one key with the same parsing rules as the file format. Throws DataError.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Throws DataError unless problem is 1..10, levels >= 1, 1 <= level, h_fd > 0 and, with a
/// mesh directory, the mesh files of every requested level exist.
void validate(const RunConfig& config, bool need_all_levels);

ProblemSpec make_problem(const RunConfig& config);

std::filesystem::path mesh_stem(const std::filesystem::path& dir, int level);

/// Level mesh from the mesh directory when set, otherwise from the builtin family.
TriMesh config_mesh(const RunConfig& config, const ProblemSpec& spec, int level);

}  // namespace wgif
