#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "doctest.h"
#include "wgif/errors.hpp"
#include "wgif/mesh.hpp"
#include "wgif/mesh_generation.hpp"
#include "wgif/mesh_io.hpp"

using namespace wgif;

namespace {

RegionId all_region1(Point2) { return RegionId::Region1; }
bool never(Point2) { return false; }

RegionId split_x(Point2 p) { return p.x < 0.0 ? RegionId::Region1 : RegionId::Region2; }
bool on_x0(Point2 p) { return std::fabs(p.x) <= 1e-9; }

void check_incidence(const TriMesh& m) {
  for (std::size_t t = 0; t < m.n_triangles(); ++t)
    for (int i = 0; i < 3; ++i) {
      const Edge& e = m.edges()[m.triangle_edges(t)[i]];
      CHECK((e.tri[0] == static_cast<int>(t) || e.tri[1] == static_cast<int>(t)));
      const auto& v = m.triangles()[t].v;
      const int a = v[(i + 1) % 3], b = v[(i + 2) % 3];
      const int sign = m.triangle_edge_signs(t)[i];
      CHECK(((sign == 1 && e.v[0] == a && e.v[1] == b) || (sign == -1 && e.v[0] == b && e.v[1] == a)));
    }
  double area = 0.0;
  for (std::size_t t = 0; t < m.n_triangles(); ++t) {
    CHECK(m.area(t) > 0.0);
    area += m.area(t);
  }
  CHECK(area == doctest::Approx(m.bounding_box().area()).epsilon(1e-12));
}

// Winding number of the closed interface polyline around p.
int interface_winding(const TriMesh& m, Point2 p) {
  double angle = 0.0;
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    const Edge& edge = m.edges()[e];
    if (edge.kind != EdgeKind::Interface) continue;
    // Orient the edge counterclockwise around the Region1 triangle's complement (Region2 on the left).
    const int t2 = edge.tri[1];
    Point2 a = m.vertices()[edge.v[0]], b = m.vertices()[edge.v[1]];
    const Vec2 n = m.outward_normal(t2, e);
    if (cross(b - a, n) > 0.0) std::swap(a, b);
    angle += std::atan2(cross(a - p, b - p), dot(a - p, b - p));
  }
  return static_cast<int>(std::lround(angle / (2.0 * std::numbers::pi)));
}

}  // namespace

TEST_CASE("ingest: two-triangle unit square") {
  std::istringstream node("4 2 0 0\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n");
  std::istringstream ele("2 3 0\n1 1 2 3\n2 1 3 4\n");
  const TriMesh m = ingest_mesh(node, ele, all_region1, never);
  CHECK(m.n_edges() == 5);
  int boundary = 0, interface = 0;
  for (const Edge& e : m.edges()) {
    boundary += e.kind == EdgeKind::DirichletBoundary;
    interface += e.kind == EdgeKind::Interface;
  }
  CHECK(boundary == 4);
  CHECK(interface == 0);
  const MeshStats s = mesh_stats(m);
  CHECK(s.h_max == doctest::Approx(std::sqrt(2.0)));
  CHECK(s.n_tri == 2);
  CHECK(s.n_edge == 5);
  check_incidence(m);
}

TEST_CASE("ingest: clockwise triangles are reoriented, comments and 0-based indices accepted") {
  std::istringstream node("# square\n4 2 0 1\n0 0 0 1\n1 1 0 1 # corner\n2 1 1 1\n3 0 1 1\n");
  std::istringstream ele("2 3 0\n0 0 2 1\n1 0 3 2\n");
  const TriMesh m = ingest_mesh(node, ele, all_region1, never);
  check_incidence(m);
}

TEST_CASE("ingest: axis-aligned split of [-1,1]^2") {
  const std::string node =
      "9 2 0 0\n1 -1 -1\n2 0 -1\n3 1 -1\n4 -1 0\n5 0 0\n6 1 0\n7 -1 1\n8 0 1\n9 1 1\n";
  const std::string ele = "8 3 0\n1 1 2 5\n2 1 5 4\n3 2 3 6\n4 2 6 5\n5 4 5 8\n6 4 8 7\n7 5 6 9\n8 5 9 8\n";
  std::istringstream ns(node), es(ele);
  const TriMesh m = ingest_mesh(ns, es, split_x, on_x0);
  std::size_t count = 0;
  for (std::size_t e = 0; e < m.n_edges(); ++e) {
    const Edge& edge = m.edges()[e];
    const bool on_line = on_x0(m.vertices()[edge.v[0]]) && on_x0(m.vertices()[edge.v[1]]);
    CHECK((edge.kind == EdgeKind::Interface) == on_line);
    if (edge.kind == EdgeKind::Interface) {
      ++count;
      CHECK(m.triangles()[edge.tri[0]].region == RegionId::Region1);
      CHECK(m.triangles()[edge.tri[1]].region == RegionId::Region2);
    }
  }
  CHECK(count == 2);
  CHECK(m.n_interface_edges() == 2);
}

TEST_CASE("ingest: malformed files report the line") {
  std::istringstream node("4 2 0 0\n1 0 0\n2 1 zero\n3 1 1\n4 0 1\n");
  std::istringstream ele("2 3 0\n1 1 2 3\n2 1 3 4\n");
  try {
    ingest_mesh(node, ele, all_region1, never);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream node2("4 2 0 0\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n");
  std::istringstream ele2("2 3 0\n1 1 2 3\n\n# gap\n2 1 3\n");
  try {
    ingest_mesh(node2, ele2, all_region1, never);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("ingest: non-conforming meshes are rejected") {
  // Hanging vertex: vertex 5 sits on the diagonal of the second triangle.
  std::istringstream node("5 2 0 0\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n5 0.5 0.5\n");
  std::istringstream ele("3 3 0\n1 1 2 5\n2 2 3 5\n3 1 3 4\n");
  CHECK_THROWS_AS(ingest_mesh(node, ele, all_region1, never), ValidationError);
  // Overlap: the same triangle twice.
  std::istringstream node2("4 2 0 0\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n");
  std::istringstream ele2("3 3 0\n1 1 2 3\n2 1 3 4\n3 1 2 3\n");
  CHECK_THROWS_AS(ingest_mesh(node2, ele2, all_region1, never), ValidationError);
}

TEST_CASE("ingest: regions that do not follow the interface are a topology error") {
  // Region boundary x=0.5 is not resolved by mesh edges.
  std::istringstream node("4 2 0 0\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n");
  std::istringstream ele("2 3 0\n1 1 2 3\n2 1 3 4\n");
  const auto region = [](Point2 p) { return p.x + p.y < 1.0 ? RegionId::Region1 : RegionId::Region2; };
  // Both centroids lie off the line, the diagonal has no interface vertices.
  const auto tilted = [](Point2 p) { return p.x > p.y ? RegionId::Region1 : RegionId::Region2; };
  CHECK_NOTHROW(ingest_mesh(node, ele, region, never));
  std::istringstream node2(node.str()), ele2(ele.str());
  CHECK_THROWS_AS(ingest_mesh(node2, ele2, tilted, never), TopologyError);
  // A centroid on the interface is ambiguous.
  std::istringstream node3(node.str()), ele3(ele.str());
  const auto through_centroid = [](Point2 p) { return std::fabs(p.y - 1.0 / 3.0) < 1e-12; };
  CHECK_THROWS_AS(ingest_mesh(node3, ele3, region, through_centroid), TopologyError);
}

TEST_CASE("structured generator: uniform mesh counts") {
  for (int n : {1, 2, 5}) {
    const Rect box{-1, 1, -1, 1};
    const TriMesh m = generate_structured_fitted(box, n, {});
    const std::size_t cells = static_cast<std::size_t>(2 * n);
    const MeshStats s = mesh_stats(m);
    CHECK(s.n_tri == 2 * cells * cells);
    CHECK(s.n_edge == 3 * cells * cells + 2 * cells);
    CHECK(s.n_interface_edge == 0);
    CHECK(s.h_max == doctest::Approx(std::sqrt(2.0) / n));
    CHECK(s.nonacute_fraction == doctest::Approx(1.0));
    check_incidence(m);
    // All diagonals run south-west to north-east.
    for (std::size_t e = 0; e < m.n_edges(); ++e) {
      const Vec2 d = m.vertices()[m.edges()[e].v[1]] - m.vertices()[m.edges()[e].v[0]];
      CHECK(d.x * d.y >= 0.0);
    }
  }
}

TEST_CASE("structured generator: vertical interface along a grid line") {
  for (int n : {2, 3, 4}) {
    const TriMesh m = generate_structured_fitted(Rect{-1, 1, -1, 1}, n, {{0, -1}, {0, 1}}, split_x);
    CHECK(m.n_interface_edges() == static_cast<std::size_t>(2 * n));
    check_incidence(m);
  }
}

TEST_CASE("structured generator: kinked interface keeps the corner") {
  const Rect box{-1, 3, -1, 1};
  const auto region = [](Point2 p) {
    const double g = p.x > 0.0 ? 2.0 * p.x : -0.5 * p.x;
    return p.y > g ? RegionId::Region1 : RegionId::Region2;
  };
  const auto on_curve = [](Point2 p) {
    const double g = p.x > 0.0 ? 2.0 * p.x : -0.5 * p.x;
    return std::fabs(p.y - g) <= 1e-9 * std::hypot(4.0, 2.0) && p.x >= -1.0 - 1e-12 && p.x <= 0.5 + 1e-12;
  };
  const std::vector<Point2> poly{{-1, 0.5}, {0, 0}, {0.5, 1}};
  for (double n : {2.0, 4.0, 8.0}) {
    const TriMesh m = generate_structured_fitted(box, n, poly, region);
    check_incidence(m);
    bool corner = false;
    for (std::size_t e = 0; e < m.n_edges(); ++e) {
      const Edge& edge = m.edges()[e];
      if (edge.kind != EdgeKind::Interface) continue;
      CHECK(on_curve(m.edge_midpoint(e)));
      for (int v : edge.v) corner |= m.vertices()[v] == Point2{0, 0};
    }
    CHECK(corner);
    for (std::size_t t = 0; t < m.n_triangles(); ++t) CHECK(m.triangles()[t].region == region(m.centroid(t)));

    // The written mesh is re-ingested identically.
    std::ostringstream node, ele;
    write_mesh(m, node, ele);
    std::istringstream ni(node.str()), ei(ele.str());
    const TriMesh back = ingest_mesh(ni, ei, region, on_curve);
    CHECK(back == m);
    CHECK(back.h_max() == m.h_max());
  }
}

TEST_CASE("structured generator: rejects self-intersecting polylines") {
  const std::vector<Point2> bow{{-0.5, -0.5}, {0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}};
  CHECK_THROWS_AS(generate_structured_fitted(Rect{-1, 1, -1, 1}, 4, bow), GenerationError);
  CHECK_THROWS_AS(generate_structured_fitted(Rect{-1, 1, -1, 1}, 4, {{0, 0}, {2, 0}}), GenerationError);
}

TEST_CASE("curved generator: circle") {
  const Rect box{-1, 1, -1, 1};
  const ParametricCurve circle{[](double t) { return Point2{0.5 * std::cos(t), 0.5 * std::sin(t)}; }, 0.0,
                               2.0 * std::numbers::pi, true};
  const auto region = [](Point2 p) { return std::hypot(p.x, p.y) > 0.5 ? RegionId::Region1 : RegionId::Region2; };
  const TriMesh m = generate_curved_fitted(box, 0.28, circle, region, 64);
  const MeshStats s = mesh_stats(m);
  CHECK(s.h_max <= 0.28);
  CHECK(s.h_max >= 0.9 * 0.28);
  CHECK(s.h_max == doctest::Approx(2.8553e-01).epsilon(0.10));
  CHECK(s.n_interface_edge >= 64);
  check_incidence(m);
  CHECK(interface_winding(m, {0, 0}) == 1);
  CHECK(interface_winding(m, {0.9, 0.9}) == 0);
  for (std::size_t v = 0; v < m.n_vertices(); ++v)
    if (m.interface_vertices()[v])
      CHECK(std::fabs(std::hypot(m.vertices()[v].x, m.vertices()[v].y) - 0.5) <= 1e-9 * box.diameter());
  MESSAGE("circle mesh: ", s.n_tri, " triangles, non-acute fraction ", s.nonacute_fraction);
}

TEST_CASE("curved generator: flower and ellipse") {
  const Rect box{-1, 1, -1, 1};
  const ParametricCurve flower{[](double t) {
                                 const double r = 0.5 + std::sin(5.0 * t) / 7.0;
                                 return Point2{r * std::cos(t), r * std::sin(t)};
                               },
                               0.0, 2.0 * std::numbers::pi, true};
  const auto in_flower = [](Point2 p) {
    const double r = std::hypot(p.x, p.y);
    const double th = std::atan2(p.y, p.x);
    return r > 0.5 + std::sin(5.0 * th) / 7.0 ? RegionId::Region1 : RegionId::Region2;
  };
  for (double h : {0.2, 0.1}) {
    const TriMesh m = generate_curved_fitted(box, h, flower, in_flower, 64);
    check_incidence(m);
    CHECK(interface_winding(m, {0, 0}) == 1);
    CHECK(m.h_max() <= h);
  }

  const double a = 10.0 / 27.0, b = 18.0 / 27.0;
  const ParametricCurve ellipse{[=](double t) { return Point2{a * std::cos(t), b * std::sin(t)}; }, 0.0,
                                2.0 * std::numbers::pi, true};
  const auto in_ellipse = [=](Point2 p) {
    const double q = (p.x / a) * (p.x / a) + (p.y / b) * (p.y / b);
    return q > 1.0 ? RegionId::Region1 : RegionId::Region2;
  };
  const TriMesh m = generate_curved_fitted(box, 0.15, ellipse, in_ellipse, 64);
  check_incidence(m);
  std::size_t on = 0;
  for (std::size_t v = 0; v < m.n_vertices(); ++v) {
    if (!m.interface_vertices()[v]) continue;
    const Point2 p = m.vertices()[v];
    CHECK(std::fabs((p.x / a) * (p.x / a) + (p.y / b) * (p.y / b) - 1.0) <= 1e-9 * box.diameter());
    ++on;
  }
  CHECK(on == m.n_interface_edges());
}

TEST_CASE("curve sampling respects spacing and curvature") {
  const ParametricCurve circle{[](double t) { return Point2{0.5 * std::cos(t), 0.5 * std::sin(t)}; }, 0.0,
                               2.0 * std::numbers::pi, true};
  const auto pts = sample_polyline(circle, 0.05, 64);
  CHECK(pts.front() == pts.back());
  CHECK(pts.size() - 1 >= 64);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) CHECK(distance(pts[k], pts[k + 1]) <= 0.05 * 1.01);
  const ParametricCurve line{[](double t) { return Point2{t, 0.0}; }, 0.0, 1.0, false};
  const auto params = sample_curve(line, 0.1, 4);
  CHECK(params.size() == 11);
  CHECK(params.front() == 0.0);
  CHECK(params.back() == 1.0);
}

TEST_CASE("uniform refinement: four children per triangle, h halves, interface stays on the curve") {
  const Rect box{-1, 1, -1, 1};
  const ParametricCurve circle{[](double t) { return Point2{0.5 * std::cos(t), 0.5 * std::sin(t)}; }, 0.0,
                               2.0 * std::numbers::pi, true};
  const auto region = [](Point2 p) { return std::hypot(p.x, p.y) > 0.5 ? RegionId::Region1 : RegionId::Region2; };
  const TriMesh coarse = generate_curved_fitted(box, 0.4, circle, region, 16);
  const MidpointRule snap = [&](Point2 a, Point2 b) { return closest_curve_point(circle, 0.5 * (a + b)); };
  const TriMesh fine = refine_uniform(coarse, snap);
  CHECK(fine.n_triangles() == 4 * coarse.n_triangles());
  CHECK(fine.n_vertices() == coarse.n_vertices() + coarse.n_edges());
  CHECK(fine.n_interface_edges() == 2 * coarse.n_interface_edges());
  CHECK(fine.h_max() == doctest::Approx(0.5 * coarse.h_max()).epsilon(0.05));
  check_incidence(fine);
  CHECK(interface_winding(fine, {0, 0}) == 1);
  for (std::size_t v = 0; v < fine.n_vertices(); ++v)
    if (fine.interface_vertices()[v])
      CHECK(std::fabs(std::hypot(fine.vertices()[v].x, fine.vertices()[v].y) - 0.5) <= 1e-9 * box.diameter());
  for (std::size_t t = 0; t < fine.n_triangles(); ++t) CHECK(fine.triangles()[t].region == region(fine.centroid(t)));

  // Without a midpoint rule the children tile the parent exactly.
  const TriMesh flat = refine_uniform(generate_structured_fitted(box, 2, {}));
  CHECK(flat.n_triangles() == 128);
  CHECK(flat.h_max() == doctest::Approx(std::sqrt(2.0) / 4.0));
}

TEST_CASE("closest curve point") {
  const ParametricCurve line{[](double t) { return Point2{t, 2.0 * t}; }, -1.0, 1.0, false};
  const Point2 q = closest_curve_point(line, {1.0, 0.0});
  CHECK(q.x == doctest::Approx(0.2).epsilon(1e-7));
  CHECK(q.y == doctest::Approx(0.4).epsilon(1e-7));
  const Point2 end = closest_curve_point(line, {5.0, 0.0});
  CHECK(end.x == doctest::Approx(1.0));
}
