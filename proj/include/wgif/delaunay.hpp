#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "wgif/geometry.hpp"

namespace wgif {

/// Incremental constrained Delaunay triangulation of a rectangle.
///
/// Points are inserted with Lawson flips, constraint segments are recovered with
/// Sloan's flip algorithm. Cocircular configurations are resolved towards the
/// south-west/north-east diagonal so that a uniform grid triangulates uniformly.
class ConstrainedDelaunay {
public:
  /// Edge tags: free edges may be flipped, tagged edges may not.
  enum Tag : std::uint8_t { kFree = 0, kBoundary = 1, kSegment = 2 };

  struct RefineOptions {
    /// Triangles with an edge longer than this are split.
    double max_edge = 0.0;
    /// Circumradius / shortest edge bound (sqrt(2) ~ 20.7 degree minimum angle); <= 0 disables.
    double max_radius_edge_ratio = 0.0;
    std::size_t max_steiner = 2'000'000;
    /// Returns the point at which a kSegment edge (a, b) is split; midpoint when empty.
    std::function<Point2(int a, int b)> segment_split;
  };

  explicit ConstrainedDelaunay(const Rect& box);

  /// Inserts one point; returns its vertex index (the existing index for duplicates).
  int insert(Point2 p);
  /// Inserts points in spatially coherent order; returns vertex indices in input order.
  std::vector<int> insert_all(std::span<const Point2> points);
  /// Forces the edge (a, b) into the triangulation and tags it.
  void insert_segment(int a, int b, Tag tag = kSegment);
  /// Flips every free non-Delaunay edge.
  void restore_delaunay();
  /// Delaunay refinement; throws GenerationError when max_steiner is exceeded.
  void refine(const RefineOptions& options);
  /// Moves vertices not touching a tagged edge towards the area-weighted centroid of their star.
  void smooth(int iterations);

  const std::vector<Point2>& points() const { return points_; }
  std::vector<std::array<int, 3>> triangles() const;
  /// Vertices touching at least one kSegment edge.
  std::vector<bool> segment_vertices() const;
  /// All kSegment edges as vertex pairs.
  std::vector<std::array<int, 2>> segments() const;
  const Rect& box() const { return box_; }
  /// Throws GenerationError unless neighbour links are mutual and every triangle is
  /// counterclockwise.
  void check() const;

private:
  struct Tri {
    std::array<int, 3> v{};
    std::array<int, 3> n{-1, -1, -1};
    std::array<std::uint8_t, 3> tag{};
    bool alive = true;
  };
  enum class LocKind { Inside, OnEdge, OnVertex };
  struct Location {
    int tri = -1;
    LocKind kind = LocKind::Inside;
    int index = 0;
  };

  Location locate(Point2 p, int start) const;
  int insert_at(Point2 p, const Location& loc);
  int new_tri(const Tri& t);
  void set_neighbor(int tri, int old_nb, int new_nb);
  int index_in(int tri, int vertex) const;
  bool should_flip(int t, int i) const;
  bool flippable(int t, int i) const;
  std::pair<int, int> flip(int t, int i);
  void legalize(std::vector<std::pair<int, int>>& stack);
  std::vector<int> triangles_around(int v) const;
  std::pair<int, int> find_edge(int a, int b) const;
  void split_segment(int t, int i, const RefineOptions& options);
  bool is_bad(int t, const RefineOptions& options) const;

  Rect box_;
  double scale_ = 1.0;
  std::vector<Point2> points_;
  std::vector<Tri> tris_;
  std::vector<int> vertex_tri_;
  int last_ = 0;
};

}  // namespace wgif
