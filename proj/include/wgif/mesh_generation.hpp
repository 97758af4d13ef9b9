#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "wgif/mesh.hpp"

namespace wgif {

/// Curve t -> point(t) on [t_begin, t_end]; a closed curve has point(t_begin) == point(t_end).
struct ParametricCurve {
  std::function<Point2(double)> point;
  double t_begin = 0.0;
  double t_end = 1.0;
  bool closed = false;
};

/// Parameters of curve samples with chord length at most min(spacing, curvature_fraction * R),
/// R the local radius of curvature, and at least `min_samples` chords. Open curves include both
/// end parameters; closed curves omit t_end.
std::vector<double> sample_curve(const ParametricCurve& curve, double spacing, std::size_t min_samples,
                                 double curvature_fraction = 0.5);

/// Points of `curve` at the parameters returned by sample_curve; a closed result repeats its
/// first point at the end.
std::vector<Point2> sample_polyline(const ParametricCurve& curve, double spacing, std::size_t min_samples,
                                    double curvature_fraction = 0.5);

struct StructuredMeshOptions {
  /// Grid points closer than clearance * H to the polyline are dropped.
  double clearance = 0.35;
  /// Same for grid points on the domain boundary.
  double boundary_clearance = 0.0;
};

/// Uniform grid of the rectangle (round(n * width) by round(n * height) cells, each split along
/// its south-west/north-east diagonal) with the polyline imposed as constrained edges.
///
/// A polyline whose first and last points coincide is closed. Straight segments longer than
/// the grid spacing are subdivided. Regions follow `region` when given, otherwise the two
/// sides of the polyline are coloured starting from Region1. Throws GenerationError.
TriMesh generate_structured_fitted(const Rect& domain, double n, const std::vector<Point2>& polyline,
                                   const RegionPredicate& region = {}, const StructuredMeshOptions& options = {});

struct CurvedMeshOptions {
  /// Circumradius to shortest edge bound for refinement; <= 0 disables the quality criterion.
  double max_radius_edge_ratio = 1.2;
  /// Background lattice spacing is target_h / lattice_factor.
  double lattice_factor = 1.1;
  double curvature_fraction = 0.5;
  int smoothing_iterations = 6;
};

/// Constrained Delaunay mesh of the rectangle with `curve` sampled into constrained edges
/// (at least `samples` points), refined until h_max <= target_h and smoothed with the
/// boundary and interface vertices held fixed. Throws GenerationError.
TriMesh generate_curved_fitted(const Rect& domain, double target_h, const ParametricCurve& curve,
                               const RegionPredicate& region, std::size_t samples,
                               const CurvedMeshOptions& options = {});

/// New position of the midpoint of an interface edge with end points a and b.
using MidpointRule = std::function<Point2(Point2, Point2)>;

/// Splits every triangle into four through its edge midpoints. Children keep the parent's
/// region; midpoints of interface edges are placed by `interface_midpoint` (the chord midpoint
/// when empty) and flagged as interface vertices. Throws ValidationError if a moved midpoint
/// inverts a child.
TriMesh refine_uniform(const TriMesh& mesh, const MidpointRule& interface_midpoint = {});

/// Point of `curve` nearest to p, by dense sampling followed by golden-section search. The
/// result lies on the curve; its position along the curve is accurate to about 1e-8.
Point2 closest_curve_point(const ParametricCurve& curve, Point2 p);

}  // namespace wgif
