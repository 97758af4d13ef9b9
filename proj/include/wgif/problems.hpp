#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wgif/geometry.hpp"
#include "wgif/mesh.hpp"
#include "wgif/mesh_generation.hpp"
#include "wgif/quadrature.hpp"

namespace wgif {

enum class ForcingMode { Analytic, FiniteDifference };

/// Data of one subdomain: -div(A grad w) - k^2 w = f.
struct RegionData {
  ScalarField coefficient;
  ScalarField exact;
  VectorField exact_gradient;
  /// Analytic right-hand side; empty when only the finite-difference oracle is available.
  ScalarField forcing;
  double helmholtz_k = 0.0;
  /// The exact-solution formula is smooth across the interface, so finite-difference stencils
  /// may reach into the other region.
  bool extends_smoothly = true;
};

/// How the level meshes of a builtin problem are produced.
struct MeshFamily {
  enum class Kind { Structured, Curved } kind = Kind::Structured;
  /// Structured: grid subdivisions per unit length at level 1, doubled per level.
  double n = 1.0;
  /// Curved: target h_max at level 1, halved per level.
  double target_h = 0.0;
  /// Structured: interface chord length as a multiple of the grid spacing.
  double interface_spacing = 1.0;
  /// Structured: grid points closer than clearance * spacing to the interface are dropped.
  double clearance = 0.35;
  /// Structured: explicit subdivisions per unit length for the first levels; later levels
  /// double the last entry. Overrides `n` when non-empty.
  std::vector<double> level_n;
  /// Levels above 1 split every triangle of the level-1 mesh into four, level - 1 times, with
  /// new interface vertices placed on the analytic interface.
  bool refine = false;
};

struct ProblemSpec {
  int id = 0;
  std::string name;
  Rect domain;
  RegionPredicate region;
  /// True within the interface tolerance of the analytic interface.
  PointPredicate on_interface;
  /// Interface pieces, joined end to end; each piece's end points become mesh vertices.
  std::vector<ParametricCurve> interface;
  std::array<RegionData, 2> data;
  ForcingMode forcing_mode = ForcingMode::Analytic;
  double h_fd = 1e-3;
  /// Point where the exact solution is singular; evaluations closer than 1e-12 are refused.
  std::optional<Point2> singularity;
  /// Lines across which the forcing may jump; load integrals are split along them.
  std::vector<Line2> forcing_breaks;
  MeshFamily family;

  const RegionData& operator[](RegionId r) const { return data[index_of(r)]; }
};

struct ProblemParameters {
  /// Example 1: A1; Example 3: A2.
  std::optional<double> b;
  /// Example 2 wavenumber.
  std::optional<double> kappa;
};

/// The ten benchmark problems. Throws DataError for an unknown id.
ProblemSpec builtin_problem(int id, const ProblemParameters& params = {});

/// Same geometry and coefficients with zero exact solution, forcing, boundary and jump data.
ProblemSpec homogeneous(const ProblemSpec& spec);

/// f = -div(A grad w) - k^2 w at x, analytic or by nested 4th-order central differences.
/// Throws EvaluationError when a stencil leaves the region of a branch that does not extend
/// smoothly, or near the singular point.
double forcing(const ProblemSpec& spec, RegionId region, Point2 x);

struct JumpData {
  double phi = 0.0;
  double psi = 0.0;
};

/// phi = u - v and psi = A1 grad u . n1 - A2 grad v . n1 at x, with n1 the unit normal
/// pointing out of Region1.
JumpData jump_data(const ProblemSpec& spec, Point2 x, Vec2 n1);

/// Exact solution value and gradient of a region's branch.
double exact_value(const ProblemSpec& spec, RegionId region, Point2 x);
Vec2 exact_gradient(const ProblemSpec& spec, RegionId region, Point2 x);

/// Gradient of a branch by 4th-order central differences with step h.
Vec2 fd_gradient(const ScalarField& f, Point2 x, double h);

/// Interface polyline with chord length at most `spacing` (plus curvature refinement for
/// curved pieces). Piece end points are always included.
std::vector<Point2> interface_polyline(const ProblemSpec& spec, double spacing);

}  // namespace wgif
