#pragma once

#include "wgif/mesh.hpp"
#include "wgif/problems.hpp"

namespace wgif {

/// Minimum number of interface samples for curved meshes.
inline constexpr std::size_t kMinInterfaceSamples = 16;

/// Mesh of refinement level `level` (1-based) of the problem's builtin family. Each level
/// halves the grid spacing (structured, unless listed in MeshFamily::level_n) or the target
/// h_max (curved), or splits the level-1 mesh uniformly when MeshFamily::refine is set.
/// Throws DataError for level < 1 and GenerationError from the generators.
TriMesh level_mesh(const ProblemSpec& spec, int level);

}  // namespace wgif
