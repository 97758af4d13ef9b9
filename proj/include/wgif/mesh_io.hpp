#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wgif/mesh.hpp"

namespace wgif {

/// Reads a Triangle-format .node/.ele pair. Indices may start at 0 or 1 (taken from the first
/// node record). Throws ParseError, ValidationError or TopologyError.
TriMesh ingest_mesh(std::istream& node, std::istream& ele, const RegionPredicate& region,
                    const PointPredicate& on_interface);
TriMesh ingest_mesh(const std::filesystem::path& node_file, const std::filesystem::path& ele_file,
                    const RegionPredicate& region, const PointPredicate& on_interface);

/// Writes 1-based .node/.ele records with 17 significant digits. Boundary marker 1 flags
/// vertices on the bounding rectangle, 2 flags interface vertices.
void write_mesh(const TriMesh& mesh, std::ostream& node, std::ostream& ele);
/// Writes `<stem>.node` and `<stem>.ele` atomically (temporary file, then rename).
void write_mesh(const TriMesh& mesh, const std::filesystem::path& stem);

/// Writes `contents` to `path` through a temporary file in the same directory and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace wgif
