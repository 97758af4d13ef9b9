#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "wgif/geometry.hpp"

namespace wgif {

enum class RegionId : std::uint8_t { Region1 = 0, Region2 = 1 };

inline constexpr int index_of(RegionId r) { return static_cast<int>(r); }
inline constexpr RegionId other(RegionId r) {
  return r == RegionId::Region1 ? RegionId::Region2 : RegionId::Region1;
}

enum class EdgeKind : std::uint8_t { Interior, DirichletBoundary, Interface };

using RegionPredicate = std::function<RegionId(Point2)>;
using PointPredicate = std::function<bool(Point2)>;

struct Triangle {
  std::array<int, 3> v{};
  RegionId region = RegionId::Region1;
};

struct Edge {
  std::array<int, 2> v{};
  EdgeKind kind = EdgeKind::Interior;
  /// Owning region for Interior and DirichletBoundary edges; Region1 for Interface edges.
  RegionId region = RegionId::Region1;
  /// Adjacent triangles. For Interface edges tri[0] is the Region1 side and tri[1] the Region2 side.
  /// A boundary edge has tri[1] == -1.
  std::array<int, 2> tri{-1, -1};
};

/// Conforming, counterclockwise triangulation of a rectangle with two region labels.
///
/// Local edge i of a triangle is the edge opposite its local vertex i. The orientation
/// sign is +1 when the global edge runs from v[i+1] to v[i+2], -1 otherwise.
/// Instances are immutable once built.
class TriMesh {
public:
  TriMesh() = default;

  /// Builds edges and incidences and validates every invariant. Triangles given clockwise
  /// are reoriented. `on_interface[v]` flags vertices that lie on the interface.
  /// Throws ValidationError (non-conforming input) or TopologyError (region labels
  /// inconsistent with the interface vertices).
  static TriMesh build(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles,
                       std::vector<RegionId> regions, std::vector<bool> on_interface);

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<bool>& interface_vertices() const { return on_interface_; }

  std::size_t n_vertices() const { return vertices_.size(); }
  std::size_t n_triangles() const { return triangles_.size(); }
  std::size_t n_edges() const { return edges_.size(); }
  std::size_t n_interface_edges() const { return n_interface_; }

  const std::array<int, 3>& triangle_edges(std::size_t t) const { return tri_edges_[t]; }
  const std::array<int, 3>& triangle_edge_signs(std::size_t t) const { return tri_signs_[t]; }

  std::array<Point2, 3> corners(std::size_t t) const;
  Point2 centroid(std::size_t t) const;
  double area(std::size_t t) const;
  double edge_length(std::size_t e) const;
  Point2 edge_midpoint(std::size_t e) const;
  /// Unit normal of edge e pointing out of triangle t (which must contain e).
  Vec2 outward_normal(std::size_t t, std::size_t e) const;

  Rect bounding_box() const { return box_; }
  double h_max() const { return h_max_; }

  friend bool operator==(const TriMesh& a, const TriMesh& b);

private:
  std::vector<Point2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<bool> on_interface_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::array<int, 3>> tri_signs_;
  std::size_t n_interface_ = 0;
  double h_max_ = 0.0;
  Rect box_{};
};

struct MeshStats {
  double h_max = 0.0;
  std::size_t n_tri = 0;
  std::size_t n_edge = 0;
  std::size_t n_interface_edge = 0;
  /// Fraction of triangles whose largest angle is at least 90 degrees.
  double nonacute_fraction = 0.0;
};

MeshStats mesh_stats(const TriMesh& mesh);

/// Largest interior angle of a triangle, in radians.
double max_angle(Point2 a, Point2 b, Point2 c);

using EdgePredicate = std::function<bool(int, int)>;

/// Region label per triangle. Triangles are grouped into components connected across
/// non-barrier edges.
///
/// With a region predicate, each component takes the area-weighted majority of the predicate
/// at its centroids. A triangle may disagree with its component only when at least two of its
/// vertices lie on the interface. Otherwise TopologyError is thrown. A centroid satisfying
/// `centroid_on_interface` is rejected as ambiguous. Without a predicate, components are
/// two-coloured across barrier edges starting from Region1 at triangle 0; a colouring conflict
/// throws TopologyError.
std::vector<RegionId> label_regions(const std::vector<Point2>& vertices,
                                    const std::vector<std::array<int, 3>>& triangles,
                                    const std::vector<bool>& on_interface, const EdgePredicate& barrier,
                                    const RegionPredicate& region, const PointPredicate& centroid_on_interface);

/// Tolerance used to decide whether a point lies on the interface.
inline double interface_tolerance(const Rect& domain) { return 1e-9 * domain.diameter(); }

}  // namespace wgif
